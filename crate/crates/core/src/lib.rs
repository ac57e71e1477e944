//! Separator logic, star-free graph expressions and the pathwidth context
//! algebra on small graphs.

pub mod canon;
pub mod context;
pub mod decomp;
pub mod graph;
pub mod logic;
pub mod mask;
pub mod monoid;
pub mod starfree;
pub mod words;

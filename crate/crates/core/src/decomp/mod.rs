//! Path decompositions: validation, exact pathwidth, the instruction view,
//! dealternation and the two-bridge factorization of contexts.

mod dealternate;
mod exact;
mod instructions;
mod two_bridge;

pub use dealternate::{dealternate, Dealternation, Interval, Label};
pub use exact::{pathwidth_exact, pathwidth_exact_frame};
pub use instructions::{from_instructions, to_instructions, validate_instructions, Instr};
pub use two_bridge::{two_bridge_decompose, FactorKind, TwoBridge};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::Context;
use crate::graph::{name_index, PortGraph};
use crate::mask::{bit, bits, full};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("bag {0} mentions vertex {1}, which does not exist")]
    UnknownVertex(usize, String),
    #[error("vertex `{0}` is in no bag")]
    Uncovered(String),
    #[error("edge `{0}`-`{1}` is in no bag")]
    EdgeUncovered(String, String),
    #[error("bags containing `{0}` do not form an interval")]
    NotInterval(String),
    #[error("first bag misses left port `{0}`")]
    LeftPortMissing(String),
    #[error("last bag misses right port `{0}`")]
    RightPortMissing(String),
    #[error("{0} free vertices are too many for the exact search")]
    TooLarge(usize),
    #[error("invalid instruction sequence: {0}")]
    BadInstructions(String),
    #[error("edge `{0}`-`{1}` joins the two parts of the split")]
    CrossEdge(String, String),
    #[error("split does not partition the non-port vertices: {0}")]
    BadSplit(String),
    #[error("width {0} exceeds the bound {1}")]
    TooWide(usize, usize),
    #[error("context has arity {0}, expected {1}")]
    WrongArity(usize, usize),
    #[error("context has {0} bridges, at least 2 are needed")]
    TooFewBridges(usize),
    #[error("no factorization found: {0}")]
    NoFactorization(String),
    #[error(transparent)]
    Context(#[from] crate::context::ContextError),
    #[error("malformed decomposition file: {0}")]
    Format(String),
}

pub type Result<T, E = DecompError> = std::result::Result<T, E>;

/// A sequence of bags over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathDecomposition {
    pub bags: Vec<u64>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<u64>) -> Self {
        PathDecomposition { bags }
    }

    /// Largest bag size minus one; `-1` only when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags
            .iter()
            .map(|b| b.count_ones() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// Drops empty bags and bags contained in a neighbouring bag until no
    /// such bag remains.
    pub fn normalized(&self) -> PathDecomposition {
        let mut out: Vec<u64> = Vec::with_capacity(self.bags.len());
        for &b in &self.bags {
            if b == 0 {
                continue;
            }
            while out.last().is_some_and(|&t| t & !b == 0) {
                out.pop();
            }
            if out.last().is_some_and(|&t| b & !t == 0) {
                continue;
            }
            out.push(b);
        }
        PathDecomposition { bags: out }
    }

    pub fn to_names(&self, names: &[String]) -> Vec<Vec<String>> {
        self.bags
            .iter()
            .map(|&b| bits(b).map(|v| names[v].clone()).collect())
            .collect()
    }

    pub fn from_names(bags: &[Vec<String>], names: &[String]) -> Result<Self> {
        let index = name_index(names).map_err(|e| DecompError::Format(e.to_string()))?;
        let mut out = Vec::with_capacity(bags.len());
        for (i, bag) in bags.iter().enumerate() {
            let mut m = 0u64;
            for v in bag {
                let &idx = index
                    .get(v.as_str())
                    .ok_or_else(|| DecompError::UnknownVertex(i, v.clone()))?;
                m |= bit(idx);
            }
            out.push(m);
        }
        Ok(PathDecomposition { bags: out })
    }

    pub fn from_json(text: &str, names: &[String]) -> Result<Self> {
        let file: DecompositionFile =
            serde_json::from_str(text).map_err(|e| DecompError::Format(e.to_string()))?;
        Self::from_names(&file.bags, names)
    }

    pub fn to_json(&self, names: &[String]) -> String {
        let file = DecompositionFile {
            bags: self.to_names(names),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub bags: Vec<Vec<String>>,
}

/// The parts of a graph or context that matter for decompositions: the
/// first bag must contain `left` and the last bag `right`.
#[derive(Clone, Copy, Debug)]
pub struct Frame<'a> {
    pub adj: &'a [u64],
    pub names: &'a [String],
    pub left: u64,
    pub right: u64,
}

impl<'a> Frame<'a> {
    pub fn of_graph(g: &'a PortGraph) -> Self {
        Frame {
            adj: g.adjacency(),
            names: g.names(),
            left: 0,
            right: 0,
        }
    }

    pub fn of_context(c: &'a Context) -> Self {
        Frame {
            adj: c.adjacency(),
            names: c.names(),
            left: c.left_vertices(),
            right: c.right_vertices(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn all(&self) -> u64 {
        full(self.adj.len())
    }
}

/// Checks coverage, the interval property and the end-bag conditions.
pub fn validate(pd: &PathDecomposition, frame: Frame) -> Result<()> {
    let (first, last) = match (pd.bags.first(), pd.bags.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Err(DecompError::NoBags),
    };
    let name = |v: usize| frame.names[v].clone();
    for (i, &b) in pd.bags.iter().enumerate() {
        if b & !frame.all() != 0 {
            let v = (b & !frame.all()).trailing_zeros() as usize;
            return Err(DecompError::UnknownVertex(i, format!("#{v}")));
        }
    }
    for v in 0..frame.n() {
        let holding: Vec<usize> = (0..pd.bags.len())
            .filter(|&i| pd.bags[i] & bit(v) != 0)
            .collect();
        match (holding.first(), holding.last()) {
            (None, _) | (_, None) => return Err(DecompError::Uncovered(name(v))),
            (Some(&a), Some(&b)) => {
                if b - a + 1 != holding.len() {
                    return Err(DecompError::NotInterval(name(v)));
                }
            }
        }
    }
    for a in 0..frame.n() {
        for b in bits(frame.adj[a] & !full(a + 1)) {
            let both = bit(a) | bit(b);
            if !pd.bags.iter().any(|&bag| bag & both == both) {
                return Err(DecompError::EdgeUncovered(name(a), name(b)));
            }
        }
    }
    if let Some(v) = bits(frame.left & !first).next() {
        return Err(DecompError::LeftPortMissing(name(v)));
    }
    if let Some(v) = bits(frame.right & !last).next() {
        return Err(DecompError::RightPortMissing(name(v)));
    }
    Ok(())
}

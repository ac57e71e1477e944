//! Named contexts used throughout the tests and the command line.

use super::Context;

/// Arity 2: left ports `a, b`, right ports `c, d`, edges `a-d` and `b-c`.
/// Left port 1 meets right port 1 by an inner path exactly in even powers.
pub fn crossing() -> Context {
    Context::from_names(
        &["a", "b", "c", "d"],
        &[("a", "d"), ("b", "c")],
        &[Some("a"), Some("b")],
        &[Some("c"), Some("d")],
    )
    .expect("valid fixture")
}

/// Arity 2: the crossing plus a hub `z` adjacent to all four ports.
pub fn hub() -> Context {
    Context::from_names(
        &["a", "b", "c", "d", "z"],
        &[
            ("a", "d"),
            ("b", "c"),
            ("a", "z"),
            ("b", "z"),
            ("z", "c"),
            ("z", "d"),
        ],
        &[Some("a"), Some("b")],
        &[Some("c"), Some("d")],
    )
    .expect("valid fixture")
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<Context> {
    match name {
        "crossing" => Some(crossing()),
        "hub" => Some(hub()),
        _ => None,
    }
}

/// The `n`-fold composite of `w` with itself, `n >= 1`.
pub fn power(w: &Context, n: usize) -> Context {
    assert!(n >= 1);
    let mut acc = w.clone();
    for _ in 1..n {
        acc = super::compose(&acc, w).expect("equal arity");
    }
    acc
}

//! Words as labeled path graphs.
//!
//! The path graph of a word has a vertex labeled `black` followed by one
//! vertex per letter, labeled by the letter. Position `u` is left of
//! position `w` exactly when removing `u` separates `w` from the black vertex.

use crate::graph::{GraphError, PortGraph, Result};
use crate::logic::{parse_formula, Formula};

pub const BLACK: &str = "black";

/// Arity-0 path graph: `b - p1 - ... - pn`, with `pi` labeled by the `i`-th
/// letter. Letters are ASCII letters.
pub fn encode_word(word: &str) -> Result<PortGraph> {
    if let Some(c) = word.chars().find(|c| !c.is_ascii_alphabetic()) {
        return Err(GraphError::Format(format!(
            "letter `{c}` is not an ASCII letter"
        )));
    }
    let mut names = vec!["b".to_string()];
    let mut labels = vec![Some(BLACK.to_string())];
    for (i, c) in word.chars().enumerate() {
        names.push(format!("p{}", i + 1));
        labels.push(Some(c.to_string()));
    }
    let edges: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
    PortGraph::new(names, &edges, Vec::new(), labels)
}

/// `u` is a letter position strictly left of the letter position `w`.
pub fn left_of(u: &str, w: &str) -> Formula {
    let text = format!(
        "exists bk. lab:{BLACK}(bk) & !lab:{BLACK}({u}) & !lab:{BLACK}({w}) & !{u}={w} & S1(bk,{w}|{u})"
    );
    parse_formula(&text).expect("well-formed")
}

/// Some `a` occurs before some `b`.
pub fn occurs_before_formula(a: char, b: char) -> Formula {
    let text = format!(
        "exists u. exists w. lab:{a}(u) & lab:{b}(w) & exists bk. lab:{BLACK}(bk) & S1(bk,w|u)"
    );
    parse_formula(&text).expect("well-formed")
}

pub fn occurs_before(word: &str, a: char, b: char) -> bool {
    match word.find(a) {
        Some(i) => word[i + 1..].contains(b),
        None => false,
    }
}

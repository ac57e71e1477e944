//! Star-free graph expressions: finite languages closed under Boolean
//! operations, fusion, forget, add and permute.

mod compile;
mod member;
mod parse;

pub use compile::compile_formula;
pub use member::{member, Membership};
pub use parse::{parse_expr, parse_expr_with};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{canonical_form, CanonicalForm, GraphError, GraphFile, PortGraph};
use crate::logic::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarFreeError {
    #[error("{op}: arity {left} does not match arity {right}")]
    ArityMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("forget applied to an arity-0 expression")]
    ForgetArityZero,
    #[error("permutation {0:?} does not match arity {1}")]
    BadPermutation(Vec<usize>, usize),
    #[error("graph of arity {got} listed in a finite language of arity {expected}")]
    FiniteArity { expected: usize, got: usize },
    #[error("graph of arity {got} tested against an expression of arity {expected}")]
    GraphArity { expected: usize, got: usize },
    #[error("labeled graphs are not supported by star-free expressions")]
    Labeled,
    #[error("label atoms cannot be compiled")]
    UnsupportedAtom,
    #[error("free variable `{0}` is not one of x1..x{1}")]
    FreeVariable(String, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = StarFreeError> = std::result::Result<T, E>;

/// A finite language of graphs with a fixed arity, stored up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLanguage {
    arity: usize,
    graphs: Vec<PortGraph>,
    certs: BTreeSet<CanonicalForm>,
}

impl FiniteLanguage {
    pub fn new(arity: usize, graphs: Vec<PortGraph>) -> Result<Self> {
        let mut kept = Vec::new();
        let mut certs = BTreeSet::new();
        for g in graphs {
            if g.arity() != arity {
                return Err(StarFreeError::FiniteArity {
                    expected: arity,
                    got: g.arity(),
                });
            }
            if g.is_labeled() {
                return Err(StarFreeError::Labeled);
            }
            if certs.insert(canonical_form(&g)) {
                kept.push(g);
            }
        }
        Ok(FiniteLanguage {
            arity,
            graphs: kept,
            certs,
        })
    }

    pub fn empty(arity: usize) -> Self {
        FiniteLanguage {
            arity,
            graphs: Vec::new(),
            certs: BTreeSet::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn graphs(&self) -> &[PortGraph] {
        &self.graphs
    }

    pub fn contains_form(&self, c: &CanonicalForm) -> bool {
        self.certs.contains(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarExpr {
    Finite(FiniteLanguage),
    Not(Box<StarExpr>),
    And(Box<StarExpr>, Box<StarExpr>),
    Or(Box<StarExpr>, Box<StarExpr>),
    Fuse(Box<StarExpr>, Box<StarExpr>),
    Forget(Box<StarExpr>),
    Add(Box<StarExpr>),
    /// New port `i` is old port `sigma[i]`, 1-based.
    Permute(Box<StarExpr>, Vec<usize>),
}

impl StarExpr {
    pub fn finite(arity: usize, graphs: Vec<PortGraph>) -> Result<Self> {
        Ok(StarExpr::Finite(FiniteLanguage::new(arity, graphs)?))
    }

    pub fn empty(arity: usize) -> Self {
        StarExpr::Finite(FiniteLanguage::empty(arity))
    }

    /// All graphs of the given arity.
    pub fn all(arity: usize) -> Self {
        StarExpr::not(StarExpr::empty(arity))
    }

    pub fn not(e: StarExpr) -> Self {
        StarExpr::Not(Box::new(e))
    }

    pub fn and(a: StarExpr, b: StarExpr) -> Self {
        StarExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: StarExpr, b: StarExpr) -> Self {
        StarExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn fuse(a: StarExpr, b: StarExpr) -> Self {
        StarExpr::Fuse(Box::new(a), Box::new(b))
    }

    pub fn forget(e: StarExpr) -> Self {
        StarExpr::Forget(Box::new(e))
    }

    pub fn add(e: StarExpr) -> Self {
        StarExpr::Add(Box::new(e))
    }

    pub fn permute(e: StarExpr, sigma: Vec<usize>) -> Self {
        StarExpr::Permute(Box::new(e), sigma)
    }

    /// Arity of the expression, or the first typing error found.
    pub fn arity_check(&self) -> Result<usize> {
        match self {
            StarExpr::Finite(l) => Ok(l.arity),
            StarExpr::Not(e) => e.arity_check(),
            StarExpr::And(a, b) | StarExpr::Or(a, b) | StarExpr::Fuse(a, b) => {
                let (l, r) = (a.arity_check()?, b.arity_check()?);
                if l != r {
                    let op = match self {
                        StarExpr::And(..) => "and",
                        StarExpr::Or(..) => "or",
                        _ => "fuse",
                    };
                    return Err(StarFreeError::ArityMismatch {
                        op,
                        left: l,
                        right: r,
                    });
                }
                Ok(l)
            }
            StarExpr::Forget(e) => match e.arity_check()? {
                0 => Err(StarFreeError::ForgetArityZero),
                k => Ok(k - 1),
            },
            StarExpr::Add(e) => Ok(e.arity_check()? + 1),
            StarExpr::Permute(e, sigma) => {
                let k = e.arity_check()?;
                crate::graph::check_permutation(sigma, k)
                    .map_err(|_| StarFreeError::BadPermutation(sigma.clone(), k))?;
                Ok(k)
            }
        }
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            StarExpr::Finite(_) => 1,
            StarExpr::Not(e) | StarExpr::Forget(e) | StarExpr::Add(e) | StarExpr::Permute(e, _) => {
                1 + e.size()
            }
            StarExpr::And(a, b) | StarExpr::Or(a, b) | StarExpr::Fuse(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Concrete syntax with inline graphs; parses back to an equal tree.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, 0);
        s
    }

    // Levels: 1 = `|`, 2 = `&`, 3 = `(+)`, 4 = unary and literals.
    fn render_into(&self, out: &mut String, min: u8) {
        let (level, sym) = match self {
            StarExpr::Or(..) => (1, " | "),
            StarExpr::And(..) => (2, " & "),
            StarExpr::Fuse(..) => (3, " (+) "),
            _ => (4, ""),
        };
        let open = level < min;
        if open {
            out.push('(');
        }
        match self {
            StarExpr::Finite(l) => {
                out.push_str(&format!("finite@{}{{", l.arity));
                for (i, g) in l.graphs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&serde_json::to_string(&GraphFile::from_graph(g)).expect("json"));
                }
                out.push('}');
            }
            StarExpr::Not(e) => {
                out.push('!');
                e.render_into(out, 4);
            }
            StarExpr::And(a, b) | StarExpr::Or(a, b) | StarExpr::Fuse(a, b) => {
                a.render_into(out, level);
                out.push_str(sym);
                b.render_into(out, level + 1);
            }
            StarExpr::Forget(e) | StarExpr::Add(e) => {
                out.push_str(if matches!(self, StarExpr::Forget(_)) {
                    "forget("
                } else {
                    "add("
                });
                e.render_into(out, 0);
                out.push(')');
            }
            StarExpr::Permute(e, sigma) => {
                let s: Vec<String> = sigma.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("perm[{}](", s.join(",")));
                e.render_into(out, 0);
                out.push(')');
            }
        }
        if open {
            out.push(')');
        }
    }
}

impl fmt::Display for StarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_examples() {
        assert_eq!(StarExpr::empty(0).arity_check(), Ok(0));
        let e = StarExpr::forget(StarExpr::add(StarExpr::empty(2)));
        assert_eq!(e.arity_check(), Ok(2));
        let bad = StarExpr::fuse(StarExpr::empty(1), StarExpr::empty(2));
        assert!(matches!(
            bad.arity_check(),
            Err(StarFreeError::ArityMismatch { op: "fuse", .. })
        ));
        assert_eq!(
            StarExpr::forget(StarExpr::empty(0)).arity_check(),
            Err(StarFreeError::ForgetArityZero)
        );
        assert!(StarExpr::permute(StarExpr::empty(2), vec![1])
            .arity_check()
            .is_err());
    }

    #[test]
    fn finite_language_rejects_wrong_arity() {
        let g = PortGraph::from_names(&["a"], &[], &["a"]).unwrap();
        assert!(StarExpr::finite(0, vec![g]).is_err());
    }
}

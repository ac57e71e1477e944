use std::collections::HashMap;

use super::{Result, StarExpr, StarFreeError};
use crate::graph::{
    canonical_form, drop_last_port, fusion_part, invert_permutation, permute, port_edges,
    prime_classes, push_port, CanonicalForm, PortGraph,
};

/// Membership test with a cache shared across queries against the same
/// expression tree. The cache is keyed by node address, so an instance must
/// not outlive or be reused across different expressions that may share
/// addresses.
#[derive(Default)]
pub struct Membership {
    memo: HashMap<(usize, CanonicalForm), bool>,
}

/// Decides `g ∈ L(e)`.
pub fn member(g: &PortGraph, e: &StarExpr) -> Result<bool> {
    Membership::default().check(g, e)
}

impl Membership {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, g: &PortGraph, e: &StarExpr) -> Result<bool> {
        let k = e.arity_check()?;
        if g.arity() != k {
            return Err(StarFreeError::GraphArity {
                expected: k,
                got: g.arity(),
            });
        }
        if g.is_labeled() {
            return Err(StarFreeError::Labeled);
        }
        Ok(self.go(g, e))
    }

    fn go(&mut self, g: &PortGraph, e: &StarExpr) -> bool {
        let cert = canonical_form(g);
        if let StarExpr::Finite(l) = e {
            return l.contains_form(&cert);
        }
        let key = (e as *const StarExpr as usize, cert);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match e {
            StarExpr::Finite(_) => unreachable!(),
            StarExpr::Not(a) => !self.go(g, a),
            StarExpr::And(a, b) => self.go(g, a) && self.go(g, b),
            StarExpr::Or(a, b) => self.go(g, a) || self.go(g, b),
            StarExpr::Fuse(a, b) => self.fuse(g, a, b),
            StarExpr::Forget(a) => (0..g.vertex_count())
                .filter(|&v| !g.is_port(v))
                .any(|v| self.go(&push_port(g, v), a)),
            StarExpr::Add(a) => {
                let last = g.port(g.arity() - 1);
                g.neighbors(last) == 0 && drop_last_port(g).is_some_and(|h| self.go(&h, a))
            }
            StarExpr::Permute(a, sigma) => {
                let h = permute(g, &invert_permutation(sigma)).expect("checked permutation");
                self.go(&h, a)
            }
        };
        self.memo.insert(key, v);
        v
    }

    /// Tries every split of the prime classes between the two sides and
    /// every assignment of each port-port edge to one side or both.
    fn fuse(&mut self, g: &PortGraph, a: &StarExpr, b: &StarExpr) -> bool {
        let classes = prime_classes(g);
        let edges = port_edges(g);
        let f = classes.len();
        let arity0 = g.arity() == 0;
        let assignments = 3usize.pow(edges.len() as u32);
        for split in 0u64..(1 << f) {
            if arity0 && (split == 0 || split == (1 << f) - 1) {
                continue;
            }
            let (mut m1, mut m2) = (0u64, 0u64);
            for (i, &c) in classes.iter().enumerate() {
                if split >> i & 1 == 1 {
                    m1 |= c;
                } else {
                    m2 |= c;
                }
            }
            for mut code in 0..assignments {
                let (mut e1, mut e2) = (Vec::new(), Vec::new());
                for &edge in &edges {
                    match code % 3 {
                        0 => e1.push(edge),
                        1 => e2.push(edge),
                        _ => {
                            e1.push(edge);
                            e2.push(edge);
                        }
                    }
                    code /= 3;
                }
                if self.go(&fusion_part(g, m1, &e1), a) && self.go(&fusion_part(g, m2, &e2), b) {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate::graphs_up_to;

    fn connected() -> StarExpr {
        StarExpr::not(StarExpr::fuse(StarExpr::all(0), StarExpr::all(0)))
    }

    #[test]
    fn connectedness_expression() {
        let tri =
            PortGraph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], &[])
                .unwrap();
        let two = PortGraph::from_names(&["a", "b"], &[], &[]).unwrap();
        assert!(member(&tri, &connected()).unwrap());
        assert!(!member(&two, &connected()).unwrap());
    }

    #[test]
    fn complement_of_empty_is_everything() {
        for k in 0..3 {
            let all = StarExpr::all(k);
            for g in graphs_up_to(4, k) {
                assert!(member(&g, &all).unwrap());
            }
        }
    }

    #[test]
    fn forced_errors() {
        let g = PortGraph::from_names(&["a"], &[], &["a"]).unwrap();
        assert!(matches!(
            member(&g, &StarExpr::all(0)),
            Err(StarFreeError::GraphArity { .. })
        ));
        let labeled = g.clone().with_labels(vec![Some("x".into())]).unwrap();
        assert_eq!(
            member(&labeled, &StarExpr::all(1)),
            Err(StarFreeError::Labeled)
        );
    }

    #[test]
    fn add_requires_isolated_last_port() {
        let e = StarExpr::add(StarExpr::all(1));
        let iso = PortGraph::from_names(&["a", "b"], &[], &["a", "b"]).unwrap();
        let joined = PortGraph::from_names(&["a", "b"], &[("a", "b")], &["a", "b"]).unwrap();
        assert!(member(&iso, &e).unwrap());
        assert!(!member(&joined, &e).unwrap());
    }
}

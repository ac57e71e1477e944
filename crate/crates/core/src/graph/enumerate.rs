//! Exhaustive and random generation of small port graphs.

use std::collections::HashSet;

use rand::Rng;

use super::{canonical_form, PortGraph};
use crate::mask::bit;

/// The graph on vertices `0..n` whose first `k` vertices are the ports and
/// whose edges are the set bits of `code` over the pairs `(a, b)`, `a < b`,
/// in lexicographic order.
pub fn graph_from_code(n: usize, k: usize, code: u64) -> PortGraph {
    let mut adj = vec![0u64; n];
    let mut e = 0;
    for a in 0..n {
        for b in a + 1..n {
            if code & bit(e) != 0 {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
            e += 1;
        }
    }
    let names = (0..n).map(|i| format!("v{i}")).collect();
    PortGraph::from_parts(names, adj, (0..k).collect(), vec![None; n])
}

/// All arity-`k` graphs with exactly `n` vertices, one per isomorphism class.
pub fn graphs_with(n: usize, k: usize) -> Vec<PortGraph> {
    assert!(k <= n && n >= 1);
    let pairs = n * (n - 1) / 2;
    assert!(pairs < 31, "too many graphs to enumerate");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0..(1u64 << pairs) {
        let g = graph_from_code(n, k, code);
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// All arity-`k` graphs with at most `max_n` vertices, up to isomorphism,
/// ordered by vertex count.
pub fn graphs_up_to(max_n: usize, k: usize) -> Vec<PortGraph> {
    (k.max(1)..=max_n).flat_map(|n| graphs_with(n, k)).collect()
}

/// Random graph on `n` vertices with `k` ports chosen among them and each
/// edge present with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, p: f64) -> PortGraph {
    assert!(k <= n && n >= 1);
    let mut adj = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
        }
    }
    let mut verts: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        verts.swap(i, j);
    }
    let names = (0..n).map(|i| format!("v{i}")).collect();
    PortGraph::from_parts(names, adj, verts[..k].to_vec(), vec![None; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // unlabeled graphs on 1..=4 vertices: 1, 2, 4, 11
        let counts: Vec<usize> = (1..=4).map(|n| graphs_with(n, 0).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11]);
        // graphs on 3 vertices with all three ports are all 8 labeled graphs
        assert_eq!(graphs_with(3, 3).len(), 8);
        assert_eq!(graphs_with(5, 0).len(), 34);
    }
}

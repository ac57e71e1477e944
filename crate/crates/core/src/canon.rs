//! Canonical labeling of small vertex-colored graphs.
//!
//! Individualization-refinement search: the initial partition groups vertices
//! by color, refinement splits cells by neighbor counts, and the search
//! individualizes every vertex of the first non-singleton cell. The smallest
//! permuted adjacency code over all leaves is the certificate. Interchangeable
//! twins inside a cell are individualized only once, which keeps edgeless
//! graphs, cliques and stars cheap.

use crate::mask::{bit, bits};

/// Result of canonical labeling.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[p]` is the vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    /// Row `p` holds the neighbors of `order[p]` as a mask over positions.
    pub code: Vec<u64>,
}

/// Computes a canonical ordering of the vertices of `adj`. Vertices with
/// smaller colors come first; two colored graphs are isomorphic iff their
/// sorted color sequences and codes agree.
pub fn canonical_labeling<C: Ord>(adj: &[u64], colors: &[C]) -> Labeling {
    let n = adj.len();
    assert_eq!(colors.len(), n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| colors[a].cmp(&colors[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &idx {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == colors[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<Labeling> = None;
    search(adj, cells, &mut best);
    best.unwrap_or(Labeling {
        order: Vec::new(),
        code: Vec::new(),
    })
}

fn search(adj: &[u64], mut cells: Vec<Vec<usize>>, best: &mut Option<Labeling>) {
    refine(adj, &mut cells);
    let target = cells.iter().position(|c| c.len() > 1);
    let Some(ci) = target else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let code = encode(adj, &order);
        if best.as_ref().is_none_or(|b| code < b.code) {
            *best = Some(Labeling { order, code });
        }
        return;
    };
    let cell = cells[ci].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
        next.splice(ci..=ci, [vec![v], rest]);
        search(adj, next, best);
    }
}

/// Swapping `u` and `v` is an automorphism of the colored graph whenever
/// they share a cell and have the same neighbors apart from each other.
fn are_twins(adj: &[u64], u: usize, v: usize) -> bool {
    (adj[u] & !bit(v)) == (adj[v] & !bit(u))
}

/// Splits cells until every cell has uniform neighbor counts into every
/// other cell. The result depends only on the isomorphism class of the
/// graph together with the ordered partition.
fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | bit(v));
            let mut out: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            let mut split_any = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((adj[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                let before = out.len();
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        out.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
                if out.len() - before > 1 {
                    split_any = true;
                }
            }
            if split_any {
                *cells = out;
                changed = true;
                s = 0;
            } else {
                s += 1;
            }
        }
    }
}

fn encode(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; adj.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    order
        .iter()
        .map(|&v| bits(adj[v]).fold(0u64, |m, u| m | bit(pos[u])))
        .collect()
}

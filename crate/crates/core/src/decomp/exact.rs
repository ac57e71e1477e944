use super::{DecompError, Frame, PathDecomposition, Result};
use crate::mask::{bit, bits};

const MAX_FREE: usize = 24;

/// Exact pathwidth of a graph, ignoring its ports.
pub fn pathwidth_exact(frame: Frame) -> Result<usize> {
    pathwidth_exact_frame(frame).map(|(w, _)| w)
}

/// Exact width together with an optimal decomposition.
///
/// Vertex-separation dynamic programming over the set `S` of vertices
/// introduced so far, starting from `S = left`. Introducing `v` creates the
/// bag made of `v` and every vertex of `S` that still has a neighbour outside
/// `S` or must survive to the last bag.
pub fn pathwidth_exact_frame(frame: Frame) -> Result<(usize, PathDecomposition)> {
    let n = frame.n();
    let free: Vec<usize> = (0..n).filter(|&v| frame.left & bit(v) == 0).collect();
    let m = free.len();
    if m > MAX_FREE {
        return Err(DecompError::TooLarge(m));
    }
    let to_mask = |s: u32| bits(s as u64).fold(frame.left, |acc, i| acc | bit(free[i]));
    let boundary = |set: u64| {
        bits(set)
            .filter(|&u| frame.adj[u] & !set != 0 || frame.right & bit(u) != 0)
            .fold(0u64, |acc, u| acc | bit(u))
    };
    let states = 1usize << m;
    let mut best = vec![i32::MAX; states];
    let mut choice = vec![u8::MAX; states];
    best[0] = frame.left.count_ones() as i32 - 1;
    for s in 0..states {
        if best[s] == i32::MAX {
            continue;
        }
        let here = boundary(to_mask(s as u32)).count_ones() as i32;
        let cost = best[s].max(here);
        for i in 0..m {
            if s & (1 << i) != 0 {
                continue;
            }
            let t = s | (1 << i);
            if cost < best[t] {
                best[t] = cost;
                choice[t] = i as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(m);
    let mut s = states - 1;
    while s != 0 {
        let i = choice[s] as usize;
        order.push(i);
        s &= !(1 << i);
    }
    order.reverse();
    let mut bags = Vec::with_capacity(m + 1);
    if frame.left != 0 {
        bags.push(frame.left);
    }
    let mut s = 0u32;
    for &i in &order {
        bags.push(boundary(to_mask(s)) | bit(free[i]));
        s |= 1 << i;
    }
    let width = best[states - 1].max(0) as usize;
    Ok((width, PathDecomposition::new(bags)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::fixtures::crossing;
    use crate::decomp::validate;
    use crate::graph::PortGraph;

    fn graph(n: usize, edges: &[(usize, usize)]) -> PortGraph {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        PortGraph::new(names, edges, vec![], vec![]).unwrap()
    }

    fn check(g: &PortGraph) -> usize {
        let (w, pd) = pathwidth_exact_frame(Frame::of_graph(g)).unwrap();
        validate(&pd, Frame::of_graph(g)).unwrap();
        assert_eq!(pd.width(), w as i64);
        w
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&graph(1, &[])), 0);
        assert_eq!(
            check(&graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
            3
        );
        // caterpillar: spine 0-1-2 with leaves 3,4 on 1 and 5 on 2
        assert_eq!(
            check(&graph(6, &[(0, 1), (1, 2), (1, 3), (1, 4), (2, 5)])),
            1
        );
        // spider with three legs of length two is not a caterpillar
        let spider = graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert_eq!(check(&spider), 2);
        assert_eq!(
            check(&graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
            2
        );
    }

    #[test]
    fn context_end_bags() {
        let c = crossing();
        let (w, pd) = pathwidth_exact_frame(Frame::of_context(&c)).unwrap();
        validate(&pd, Frame::of_context(&c)).unwrap();
        // {a,b} {a,b,d} {b,d} {b,c,d} {c,d}
        assert_eq!(w, 2);
    }
}

use std::collections::BTreeSet;

use proptest::prelude::*;

use sepgraph::graph::enumerate::{graph_from_code, graphs_up_to};
use sepgraph::graph::{canonical_form, fuse, iso, permute, PortGraph};
use sepgraph::logic::ef_equivalent;

fn relabel(g: &PortGraph, perm: &[usize]) -> PortGraph {
    let n = g.vertex_count();
    let mut names = vec![String::new(); n];
    let mut labels = vec![None; n];
    for v in 0..n {
        names[perm[v]] = g.name(v).to_string();
        labels[perm[v]] = g.label(v).map(str::to_string);
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (perm[a], perm[b])).collect();
    let ports = g.ports().iter().map(|&p| perm[p]).collect();
    PortGraph::new(names, &edges, ports, labels).unwrap()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = PortGraph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n.min(3), any::<u64>()))
        .prop_map(|(n, k, code)| {
            let pairs = n * (n - 1) / 2;
            let mask = if pairs >= 64 {
                u64::MAX
            } else {
                (1u64 << pairs) - 1
            };
            graph_from_code(n, k, code & mask)
        })
}

proptest! {
    #[test]
    fn canonical_form_ignores_vertex_order(
        g in graph_strategy(8),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(iso(&g, &h));
    }

    #[test]
    fn fusion_is_commutative(g in graph_strategy(5), h in graph_strategy(5)) {
        prop_assume!(g.arity() == h.arity());
        prop_assert!(iso(&fuse(&g, &h).unwrap(), &fuse(&h, &g).unwrap()));
    }

    #[test]
    fn port_permutations_compose(g in graph_strategy(5)) {
        let k = g.arity();
        let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k + 1).collect();
        let mut h = g.clone();
        for _ in 0..k {
            h = permute(&h, &rot).unwrap();
        }
        prop_assert!(iso(&g, &h));
    }

    #[test]
    fn ef_is_reflexive_and_iso_invariant(g in graph_strategy(5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let h = relabel(&g, &perm);
        for r in 0..=2 {
            prop_assert!(ef_equivalent(&g, &h, r).unwrap());
        }
    }
}

/// Rank-`r` type of a tuple: its atomic type and the set of rank `r - 1`
/// types of all one-vertex extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Type(Vec<bool>, BTreeSet<Type>);

fn separated(g: &PortGraph, a: usize, b: usize, z: &[usize]) -> bool {
    if z.contains(&a) || z.contains(&b) {
        return true;
    }
    if a == b {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(v) = stack.pop() {
        for u in 0..g.vertex_count() {
            if g.has_edge(v, u) && !seen[u] && !z.contains(&u) {
                if u == b {
                    return false;
                }
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    true
}

fn atomic(g: &PortGraph, t: &[usize]) -> Vec<bool> {
    let m = t.len();
    let mut out = Vec::new();
    for i in 0..m {
        out.push(g.label(t[i]).is_some());
        for j in i + 1..m {
            out.push(t[i] == t[j]);
            out.push(g.has_edge(t[i], t[j]));
        }
    }
    for zset in 0..(1usize << m) {
        let z: Vec<usize> = (0..m)
            .filter(|&i| zset >> i & 1 == 1)
            .map(|i| t[i])
            .collect();
        for i in 0..m {
            for j in i + 1..m {
                out.push(separated(g, t[i], t[j], &z));
            }
        }
    }
    out
}

fn type_of(g: &PortGraph, t: &mut Vec<usize>, r: usize) -> Type {
    let mut ext = BTreeSet::new();
    if r > 0 {
        for v in 0..g.vertex_count() {
            t.push(v);
            ext.insert(type_of(g, t, r - 1));
            t.pop();
        }
    }
    Type(atomic(g, t), ext)
}

#[test]
fn ef_game_matches_hintikka_types() {
    let mut compared = 0;
    let mut equivalent = 0;
    for k in 0..=2 {
        let graphs = graphs_up_to(4, k);
        for r in 0..=2 {
            let types: Vec<Type> = graphs
                .iter()
                .map(|g| type_of(g, &mut g.ports().to_vec(), r))
                .collect();
            for i in 0..graphs.len() {
                for j in i..graphs.len() {
                    let game = ef_equivalent(&graphs[i], &graphs[j], r).unwrap();
                    let same = types[i] == types[j];
                    assert_eq!(
                        game,
                        same,
                        "k={k} r={r}: {} vs {}",
                        graphs[i].to_json(),
                        graphs[j].to_json()
                    );
                    compared += 1;
                    equivalent += usize::from(same && i != j);
                }
            }
        }
    }
    assert!(compared > 1000);
    assert!(equivalent > 0);
}

#[test]
fn single_vertex_and_two_points_split_at_rank_two() {
    let one = PortGraph::from_names(&["a"], &[], &[]).unwrap();
    let two = PortGraph::from_names(&["a", "b"], &[], &[]).unwrap();
    assert!(ef_equivalent(&one, &two, 1).unwrap());
    assert!(!ef_equivalent(&one, &two, 2).unwrap());
}

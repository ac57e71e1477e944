use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use sepgraph::context::{
    beta, beta_compose, bridges, build_from_word, compose, context_form, context_iso,
    enumerate_k_generators, persistent_ports, Context, GeneratorAlphabet,
};
use sepgraph::decomp::{pathwidth_exact, Frame};

fn alphabet(k: usize) -> &'static GeneratorAlphabet {
    static A: OnceLock<Vec<GeneratorAlphabet>> = OnceLock::new();
    &A.get_or_init(|| {
        (1..=3)
            .map(|k| enumerate_k_generators(k).unwrap())
            .collect()
    })[k - 1]
}

/// Partial injective maps from `k` indices into `n` vertices.
fn partial_injections(k: usize, n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &out {
            next.push({
                let mut m = m.clone();
                m.push(None);
                m
            });
            for v in 0..n {
                if !m.contains(&Some(v)) {
                    let mut m = m.clone();
                    m.push(Some(v));
                    next.push(m);
                }
            }
        }
        out = next;
    }
    out
}

/// Every arity-`k` context with at most `k + 1` vertices, counted up to
/// isomorphism, by trying every edge set and every pair of port maps.
fn count_generators(k: usize) -> usize {
    let mut seen = HashSet::new();
    for n in 1..=k + 1 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let maps = partial_injections(k, n);
        for code in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(e, _)| code >> e & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            for l in &maps {
                for r in &maps {
                    if let Ok(c) = Context::new(names.clone(), &edges, l.clone(), r.clone()) {
                        seen.insert(context_form(&c));
                    }
                }
            }
        }
    }
    seen.len()
}

#[test]
fn generator_counts_match_brute_force() {
    assert_eq!(count_generators(1), 14);
    assert_eq!(count_generators(2), 219);
    for k in 1..=2 {
        assert_eq!(alphabet(k).len(), count_generators(k));
    }
}

#[test]
#[ignore = "about half a minute in release mode"]
fn generator_count_at_arity_three() {
    assert_eq!(count_generators(3), 6939);
    assert_eq!(alphabet(3).len(), 6939);
}

fn word(k: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..alphabet(k).len(), 1..=max_len)
}

fn arity_and_words() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1..=3usize).prop_flat_map(|k| (Just(k), word(k, 3), word(k, 3), word(k, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn beta_is_a_homomorphism((k, u, v, _) in arity_and_words()) {
        let a = alphabet(k);
        let cu = build_from_word(a, &u).unwrap();
        let cv = build_from_word(a, &v).unwrap();
        let lhs = beta_compose(&beta(&cu), &beta(&cv)).unwrap();
        prop_assert_eq!(lhs, beta(&compose(&cu, &cv).unwrap()));
    }

    #[test]
    fn composition_is_associative((k, u, v, w) in arity_and_words()) {
        let a = alphabet(k);
        let (cu, cv, cw) = (
            build_from_word(a, &u).unwrap(),
            build_from_word(a, &v).unwrap(),
            build_from_word(a, &w).unwrap(),
        );
        let left = compose(&compose(&cu, &cv).unwrap(), &cw).unwrap();
        let right = compose(&cu, &compose(&cv, &cw).unwrap()).unwrap();
        prop_assert!(context_iso(&left, &right));
    }

    #[test]
    fn identity_on_the_interface_is_neutral((k, u, _, _) in arity_and_words()) {
        let c = build_from_word(alphabet(k), &u).unwrap();
        let id_on = |mask: u64| {
            let idx: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let names = idx.iter().map(|i| format!("p{i}")).collect();
            let mut ports = vec![None; k];
            for (v, &i) in idx.iter().enumerate() {
                ports[i] = Some(v);
            }
            Context::new(names, &[], ports.clone(), ports)
        };
        if let Ok(id) = id_on(c.defined_left()) {
            prop_assert!(context_iso(&compose(&id, &c).unwrap(), &c));
        }
        if let Ok(id) = id_on(c.defined_right()) {
            prop_assert!(context_iso(&compose(&c, &id).unwrap(), &c));
        }
        if c.defined_left() == (1 << k) - 1 && c.defined_right() == (1 << k) - 1 {
            let id = Context::identity(k);
            prop_assert!(context_iso(&compose(&id, &c).unwrap(), &c));
        }
    }

    #[test]
    fn persistent_ports_shrink((k, u, v, _) in arity_and_words()) {
        let a = alphabet(k);
        let cu = build_from_word(a, &u).unwrap();
        let cv = build_from_word(a, &v).unwrap();
        let p = persistent_ports(&compose(&cu, &cv).unwrap());
        prop_assert_eq!(p & !(persistent_ports(&cu) & persistent_ports(&cv)), 0);
    }

    #[test]
    fn word_contexts_have_small_pathwidth((k, u, _, _) in arity_and_words()) {
        let c = build_from_word(alphabet(k), &u).unwrap();
        prop_assert!(pathwidth_exact(Frame::of_context(&c)).unwrap() <= k);
    }

    #[test]
    fn bridges_are_inner_components((k, u, _, _) in arity_and_words()) {
        let c = build_from_word(alphabet(k), &u).unwrap();
        let all: HashSet<_> = sepgraph::context::inner_components(&c).into_iter().collect();
        for b in bridges(&c) {
            prop_assert!(all.contains(&b));
        }
    }
}

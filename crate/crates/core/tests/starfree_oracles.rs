use std::collections::HashMap;

use sepgraph::graph::enumerate::graphs_up_to;
use sepgraph::graph::{canonical_form, fuse, CanonicalForm, PortGraph};
use sepgraph::logic::{eval_on_ports, parse_formula};
use sepgraph::starfree::{compile_formula, member, parse_expr, Membership, StarExpr};

/// `g` is in `a (+) b` iff some pair of graphs from the enumeration fuses
/// to `g` with the left part in `a` and the right part in `b`.
fn raw_fusion(k: usize, max_n: usize, a: &StarExpr, b: &StarExpr) -> HashMap<CanonicalForm, bool> {
    let graphs = graphs_up_to(max_n, k);
    let mut ma = Membership::new();
    let mut mb = Membership::new();
    let in_a: Vec<bool> = graphs.iter().map(|g| ma.check(g, a).unwrap()).collect();
    let in_b: Vec<bool> = graphs.iter().map(|g| mb.check(g, b).unwrap()).collect();
    let mut out: HashMap<CanonicalForm, bool> = HashMap::new();
    for (i, g1) in graphs.iter().enumerate() {
        for (j, g2) in graphs.iter().enumerate() {
            if g1.vertex_count() + g2.vertex_count() - k > max_n {
                continue;
            }
            let f = canonical_form(&fuse(g1, g2).unwrap());
            *out.entry(f).or_insert(false) |= in_a[i] && in_b[j];
        }
    }
    out
}

fn check_fusion(k: usize, max_n: usize, a: &str, b: &str) {
    let fa = compile_formula(&parse_formula(a).unwrap(), k).unwrap();
    let fb = compile_formula(&parse_formula(b).unwrap(), k).unwrap();
    let raw = raw_fusion(k, max_n, &fa, &fb);
    let e = StarExpr::fuse(fa, fb);
    let mut m = Membership::new();
    let mut hits = 0;
    for g in graphs_up_to(max_n, k) {
        let fast = m.check(&g, &e).unwrap();
        let slow = raw.get(&canonical_form(&g)).copied().unwrap_or(false);
        assert_eq!(fast, slow, "{a} (+) {b} on {}", g.to_json());
        hits += usize::from(fast);
    }
    assert!(hits > 0, "{a} (+) {b} is empty up to {max_n} vertices");
}

#[test]
fn fusion_membership_matches_raw_enumeration() {
    check_fusion(
        0,
        5,
        "exists x. exists y. E(x,y)",
        "exists x. exists y. S0(x,y)",
    );
    check_fusion(1, 5, "exists y. E(x1,y)", "forall y. x1=y | !E(x1,y)");
    check_fusion(2, 5, "E(x1,x2)", "!S0(x1,x2)");
    check_fusion(2, 5, "exists y. E(x1,y) & E(y,x2)", "S0(x1,x2)");
}

#[test]
fn compiled_expressions_survive_rendering() {
    for (text, k) in [
        ("S1(x1,x2|x3)", 3),
        ("exists y. E(x1,y)", 1),
        ("E(x1,x2)", 2),
    ] {
        let f = parse_formula(text).unwrap();
        let e = compile_formula(&f, k).unwrap();
        let back = parse_expr(&e.render()).unwrap();
        for g in graphs_up_to(4, k) {
            assert_eq!(
                member(&g, &back).unwrap(),
                eval_on_ports(&f, &g).unwrap(),
                "{text}"
            );
        }
    }
}

#[test]
fn separator_witness_language() {
    // port 3 separates ports 1 and 2
    let e = compile_formula(&parse_formula("S1(x1,x2|x3)").unwrap(), 3).unwrap();
    let path = PortGraph::from_names(
        &["a", "b", "c"],
        &[("a", "c"), ("c", "b")],
        &["a", "b", "c"],
    )
    .unwrap();
    let tri = PortGraph::from_names(
        &["a", "b", "c"],
        &[("a", "c"), ("c", "b"), ("a", "b")],
        &["a", "b", "c"],
    )
    .unwrap();
    assert!(member(&path, &e).unwrap());
    assert!(!member(&tri, &e).unwrap());
}

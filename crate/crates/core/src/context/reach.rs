use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Context, ContextError, Result};
use crate::mask::{bit, bits, reach_through};

/// A port of a context: side and 0-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PortRef {
    L(usize),
    R(usize),
}

impl PortRef {
    fn slot(self, k: usize) -> usize {
        match self {
            PortRef::L(i) => i,
            PortRef::R(i) => k + i,
        }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortRef::L(i) => write!(f, "L{}", i + 1),
            PortRef::R(i) => write!(f, "R{}", i + 1),
        }
    }
}

/// Image of a context under the reachability homomorphism.
///
/// `reach[p]` is a mask over slots, with left port `i` at slot `i` and
/// right port `i` at slot `k + i`. The relation is reflexive on defined
/// ports and records connection by inner paths, whose interior avoids all
/// ports.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReachabilityType {
    pub arity: usize,
    pub defined_left: u64,
    pub defined_right: u64,
    pub persistent: u64,
    pub reach: Vec<u64>,
}

impl ReachabilityType {
    pub fn reaches(&self, p: PortRef, q: PortRef) -> bool {
        self.reach[p.slot(self.arity)] & bit(q.slot(self.arity)) != 0
    }

    pub fn is_defined(&self, p: PortRef) -> bool {
        match p {
            PortRef::L(i) => self.defined_left & bit(i) != 0,
            PortRef::R(i) => self.defined_right & bit(i) != 0,
        }
    }

    /// Every reachable pair `(p, q)` with `p < q`.
    pub fn pairs(&self) -> Vec<(PortRef, PortRef)> {
        let refs = self.refs();
        let mut out = Vec::new();
        for (a, &p) in refs.iter().enumerate() {
            for &q in &refs[a + 1..] {
                if self.reaches(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn refs(&self) -> Vec<PortRef> {
        let k = self.arity;
        (0..k)
            .map(PortRef::L)
            .chain((0..k).map(PortRef::R))
            .filter(|&p| self.is_defined(p))
            .collect()
    }
}

pub fn beta(w: &Context) -> ReachabilityType {
    let k = w.arity();
    let adj = w.adjacency();
    let through = w.all_mask() & !w.port_vertices();
    let mut vertex_of = vec![None; 2 * k];
    for i in 0..k {
        vertex_of[i] = w.left(i);
        vertex_of[k + i] = w.right(i);
    }
    let mut reach = vec![0u64; 2 * k];
    for p in 0..2 * k {
        let Some(x) = vertex_of[p] else { continue };
        let seen = reach_through(adj, through, x);
        for q in 0..2 * k {
            if vertex_of[q].is_some_and(|y| seen & bit(y) != 0) {
                reach[p] |= bit(q);
            }
        }
    }
    let persistent = (0..k)
        .filter(|&i| w.left(i).is_some() && w.left(i) == w.right(i))
        .fold(0, |m, i| m | bit(i));
    ReachabilityType {
        arity: k,
        defined_left: w.defined_left(),
        defined_right: w.defined_right(),
        persistent,
        reach,
    }
}

/// Abstract composition; agrees with `beta(compose(u, v))`.
///
/// The ports of both factors are merged into the vertices they become in the
/// composite: a persistent port joins its two sides, and a right port of the
/// first factor joins the same-index left port of the second. The merged
/// vertices that are not ports of the composite may then serve as interior
/// points of composite inner paths.
pub fn beta_compose(r1: &ReachabilityType, r2: &ReachabilityType) -> Result<ReachabilityType> {
    let k = r1.arity;
    if r2.arity != k {
        return Err(ContextError::ArityMismatch(k, r2.arity));
    }
    // nodes: slots of r1 at 0..2k, slots of r2 at 2k..4k
    let node = |second: bool, p: PortRef| p.slot(k) + if second { 2 * k } else { 0 };
    let mut uf = UnionFind::new(4 * k);
    for i in 0..k {
        if r1.persistent & bit(i) != 0 {
            uf.union(node(false, PortRef::L(i)), node(false, PortRef::R(i)));
        }
        if r2.persistent & bit(i) != 0 {
            uf.union(node(true, PortRef::L(i)), node(true, PortRef::R(i)));
        }
        if r1.defined_right & bit(i) != 0 && r2.defined_left & bit(i) != 0 {
            uf.union(node(false, PortRef::R(i)), node(true, PortRef::L(i)));
        }
    }
    let defined = |n: usize| {
        let (r, slot) = if n < 2 * k { (r1, n) } else { (r2, n - 2 * k) };
        let p = if slot < k {
            PortRef::L(slot)
        } else {
            PortRef::R(slot - k)
        };
        r.is_defined(p)
    };
    let nodes: Vec<usize> = (0..4 * k).filter(|&n| defined(n)).collect();
    let mut class = vec![usize::MAX; 4 * k];
    let mut classes = 0;
    let mut root_class = vec![usize::MAX; 4 * k];
    for &n in &nodes {
        let r = uf.find(n);
        if root_class[r] == usize::MAX {
            root_class[r] = classes;
            classes += 1;
        }
        class[n] = root_class[r];
    }
    assert!(classes <= 64);
    let mut is_port = 0u64;
    for i in 0..k {
        if r1.defined_left & bit(i) != 0 {
            is_port |= bit(class[node(false, PortRef::L(i))]);
        }
        if r2.defined_right & bit(i) != 0 {
            is_port |= bit(class[node(true, PortRef::R(i))]);
        }
    }
    let mut adj = vec![0u64; classes];
    for (r, base) in [(r1, 0), (r2, 2 * k)] {
        for a in 0..2 * k {
            if !defined(base + a) {
                continue;
            }
            for b in bits(r.reach[a]) {
                let (x, y) = (class[base + a], class[base + b]);
                if x != y {
                    adj[x] |= bit(y);
                    adj[y] |= bit(x);
                }
            }
        }
    }
    let through = crate::mask::full(classes) & !is_port;
    let mut ref_class = vec![None; 2 * k];
    for i in 0..k {
        if r1.defined_left & bit(i) != 0 {
            ref_class[i] = Some(class[node(false, PortRef::L(i))]);
        }
        if r2.defined_right & bit(i) != 0 {
            ref_class[k + i] = Some(class[node(true, PortRef::R(i))]);
        }
    }
    let mut reach = vec![0u64; 2 * k];
    for p in 0..2 * k {
        let Some(cp) = ref_class[p] else { continue };
        let seen = reach_through(&adj, through, cp);
        for q in 0..2 * k {
            if ref_class[q].is_some_and(|cq| seen & bit(cq) != 0) {
                reach[p] |= bit(q);
            }
        }
    }
    let persistent = (0..k)
        .filter(|&i| ref_class[i].is_some() && ref_class[i] == ref_class[k + i])
        .fold(0, |m, i| m | bit(i));
    Ok(ReachabilityType {
        arity: k,
        defined_left: r1.defined_left,
        defined_right: r2.defined_right,
        persistent,
        reach,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

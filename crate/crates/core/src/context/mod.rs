//! Contexts: graphs with partial injective left and right port maps, the
//! monoid-like composition that glues right ports to left ports, and the
//! reachability abstraction.

mod bridges;
pub mod fixtures;
mod format;
mod generators;
mod reach;

pub use bridges::{bridges, inner_components, persistent_ports};
pub use format::ContextFile;
pub use generators::{build_from_word, enumerate_k_generators, GeneratorAlphabet};
pub use reach::{beta, beta_compose, PortRef, ReachabilityType};

use thiserror::Error;

use crate::canon::canonical_labeling;
use crate::graph::{CanonicalForm, MAX_VERTICES};
use crate::mask::{self, bit, bits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("context has no vertices")]
    Empty,
    #[error("context has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("port index {0} out of range for arity {1}")]
    PortOutOfRange(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{side} map is not injective: vertex {vertex} used twice")]
    NotInjective { side: &'static str, vertex: usize },
    #[error("vertex {vertex} is left port {left} and right port {right}")]
    Incompatible {
        vertex: usize,
        left: usize,
        right: usize,
    },
    #[error("strict composition needs equal interfaces: right {0:?} vs left {1:?}")]
    InterfaceMismatch(Vec<usize>, Vec<usize>),
    #[error("empty generator word")]
    EmptyWord,
    #[error("unknown generator id {0}")]
    UnknownGenerator(String),
    #[error("arity must be at least 1")]
    ArityZero,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed context file: {0}")]
    Format(String),
}

pub type Result<T, E = ContextError> = std::result::Result<T, E>;

/// A context of arity `k`. Port indices are 0-based internally and 1-based
/// in files and printed output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
    adj: Vec<u64>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl Context {
    pub fn new(
        names: Vec<String>,
        edges: &[(usize, usize)],
        left: Vec<Option<usize>>,
        right: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(ContextError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(ContextError::TooManyVertices(n));
        }
        if left.len() != right.len() {
            return Err(ContextError::ArityMismatch(left.len(), right.len()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(ContextError::DuplicateVertex(a.clone()));
            }
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(ContextError::VertexOutOfRange(v));
                }
            }
            if a == b {
                return Err(ContextError::SelfLoop(a));
            }
            if adj[a] & bit(b) != 0 {
                return Err(ContextError::DuplicateEdge(a, b));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        let c = Context {
            names,
            adj,
            left,
            right,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a context from vertex names; port lists give the vertex of
    /// each index, `None` for undefined.
    pub fn from_names(
        vertices: &[&str],
        edges: &[(&str, &str)],
        left: &[Option<&str>],
        right: &[Option<&str>],
    ) -> Result<Self> {
        let lookup = |s: &str| {
            vertices
                .iter()
                .position(|v| *v == s)
                .ok_or_else(|| ContextError::UnknownVertex(s.to_string()))
        };
        let edges = edges
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let map = |side: &[Option<&str>]| {
            side.iter()
                .map(|p| p.map(lookup).transpose())
                .collect::<Result<Vec<_>>>()
        };
        Context::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            &edges,
            map(left)?,
            map(right)?,
        )
    }

    pub(crate) fn from_parts(
        names: Vec<String>,
        adj: Vec<u64>,
        left: Vec<Option<usize>>,
        right: Vec<Option<usize>>,
    ) -> Self {
        let c = Context {
            names,
            adj,
            left,
            right,
        };
        debug_assert!(c.validate().is_ok());
        c
    }

    /// The full-interface identity of arity `k`: `k` isolated vertices, the
    /// `i`-th one being both left and right port `i`.
    pub fn identity(k: usize) -> Self {
        let names = (1..=k).map(|i| format!("p{i}")).collect();
        let ports: Vec<Option<usize>> = (0..k).map(Some).collect();
        Context::from_parts(names, vec![0; k], ports.clone(), ports)
    }

    fn validate(&self) -> Result<()> {
        let n = self.names.len();
        let k = self.arity();
        let mut left_of = vec![None; n];
        for (side, map) in [("left", &self.left), ("right", &self.right)] {
            let mut used = 0u64;
            for &v in map.iter().flatten() {
                if v >= n {
                    return Err(ContextError::VertexOutOfRange(v));
                }
                if used & bit(v) != 0 {
                    return Err(ContextError::NotInjective { side, vertex: v });
                }
                used |= bit(v);
            }
        }
        for (i, &v) in self.left.iter().enumerate() {
            if let Some(v) = v {
                left_of[v] = Some(i);
            }
        }
        for (j, &v) in self.right.iter().enumerate() {
            if let Some(v) = v {
                if let Some(i) = left_of[v] {
                    if i != j {
                        return Err(ContextError::Incompatible {
                            vertex: v,
                            left: i + 1,
                            right: j + 1,
                        });
                    }
                }
            }
        }
        debug_assert!(k == self.right.len());
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.left.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.names.len())
            .flat_map(move |a| bits(self.adj[a] & !mask::full(a + 1)).map(move |b| (a, b)))
    }

    /// Vertex of left port `i` (0-based).
    pub fn left(&self, i: usize) -> Option<usize> {
        self.left[i]
    }

    pub fn right(&self, i: usize) -> Option<usize> {
        self.right[i]
    }

    pub fn left_ports(&self) -> &[Option<usize>] {
        &self.left
    }

    pub fn right_ports(&self) -> &[Option<usize>] {
        &self.right
    }

    /// Defined left indices as a mask over `0..k`.
    pub fn defined_left(&self) -> u64 {
        index_mask(&self.left)
    }

    pub fn defined_right(&self) -> u64 {
        index_mask(&self.right)
    }

    /// Vertices that are a left or a right port.
    pub fn port_vertices(&self) -> u64 {
        self.left_vertices() | self.right_vertices()
    }

    pub fn left_vertices(&self) -> u64 {
        mask::from_indices(self.left.iter().flatten().copied())
    }

    pub fn right_vertices(&self) -> u64 {
        mask::from_indices(self.right.iter().flatten().copied())
    }

    pub fn all_mask(&self) -> u64 {
        mask::full(self.names.len())
    }
}

fn index_mask(map: &[Option<usize>]) -> u64 {
    map.iter()
        .enumerate()
        .filter(|(_, v)| v.is_some())
        .fold(0, |m, (i, _)| m | bit(i))
}

/// Glues `u.right(i)` to `v.left(i)` wherever both are defined. Ports on
/// either side without a partner stay behind as ordinary vertices.
pub fn compose(u: &Context, v: &Context) -> Result<Context> {
    let k = u.arity();
    if v.arity() != k {
        return Err(ContextError::ArityMismatch(k, v.arity()));
    }
    let mut map = vec![usize::MAX; v.vertex_count()];
    for i in 0..k {
        if let (Some(a), Some(b)) = (u.right[i], v.left[i]) {
            map[b] = a;
        }
    }
    let mut names = u.names.clone();
    for (b, slot) in map.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = names.len();
            names.push(crate::graph::fresh_name(&names, &v.names[b]));
        }
    }
    if names.len() > MAX_VERTICES {
        return Err(ContextError::TooManyVertices(names.len()));
    }
    let mut adj = u.adj.clone();
    adj.resize(names.len(), 0);
    for (a, b) in v.edges() {
        let (x, y) = (map[a], map[b]);
        adj[x] |= bit(y);
        adj[y] |= bit(x);
    }
    let right = v.right.iter().map(|p| p.map(|b| map[b])).collect();
    let out = Context {
        names,
        adj,
        left: u.left.clone(),
        right,
    };
    out.validate()?;
    Ok(out)
}

/// Composition restricted to matching interfaces: every right port of `u`
/// must meet a left port of `v` and vice versa.
pub fn compose_strict(u: &Context, v: &Context) -> Result<Context> {
    if u.arity() == v.arity() && u.defined_right() != v.defined_left() {
        let list = |m: u64| bits(m).map(|i| i + 1).collect();
        return Err(ContextError::InterfaceMismatch(
            list(u.defined_right()),
            list(v.defined_left()),
        ));
    }
    compose(u, v)
}

/// Certificate of the isomorphism class, preserving port indices.
pub fn context_form(c: &Context) -> CanonicalForm {
    let n = c.vertex_count();
    let k = c.arity();
    let mut colors = vec![(usize::MAX, usize::MAX); n];
    for i in 0..k {
        if let Some(v) = c.left[i] {
            colors[v].0 = i;
        }
        if let Some(v) = c.right[i] {
            colors[v].1 = i;
        }
    }
    let lab = canonical_labeling(&c.adj, &colors);
    let mut out = vec![k as u8, n as u8];
    for &v in &lab.order {
        let (l, r) = colors[v];
        out.push(if l == usize::MAX { 0 } else { l as u8 + 1 });
        out.push(if r == usize::MAX { 0 } else { r as u8 + 1 });
    }
    for row in &lab.code {
        out.extend_from_slice(&row.to_le_bytes()[..n.div_ceil(8)]);
    }
    CanonicalForm(out)
}

pub fn context_iso(a: &Context, b: &Context) -> bool {
    a.arity() == b.arity()
        && a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && context_form(a) == context_form(b)
}

#[cfg(test)]
mod tests {
    use super::fixtures::crossing;
    use super::*;

    #[test]
    fn rejects_incompatible_ports() {
        let e = Context::from_names(&["a", "b"], &[], &[Some("a"), None], &[None, Some("a")]);
        assert!(matches!(e, Err(ContextError::Incompatible { .. })));
        let e = Context::from_names(&["a"], &[], &[Some("a"), Some("a")], &[None, None]);
        assert!(matches!(e, Err(ContextError::NotInjective { .. })));
    }

    #[test]
    fn identity_is_neutral_on_full_interfaces() {
        let w = crossing();
        let k = w.arity();
        assert!(context_iso(
            &compose(&w, &Context::identity(k)).unwrap(),
            &w
        ));
        assert!(context_iso(
            &compose(&Context::identity(k), &w).unwrap(),
            &w
        ));
    }

    #[test]
    fn unmatched_ports_survive() {
        let u = Context::from_names(&["a"], &[], &[None], &[Some("a")]).unwrap();
        let v = Context::from_names(&["b"], &[], &[None], &[Some("b")]).unwrap();
        let uv = compose(&u, &v).unwrap();
        assert_eq!(uv.vertex_count(), 2);
        assert_eq!(uv.right(0), Some(1));
        assert!(compose_strict(&u, &v).is_err());
    }

    #[test]
    fn port_swap_changes_form() {
        let a =
            Context::from_names(&["a", "b"], &[], &[Some("a"), None], &[None, Some("b")]).unwrap();
        let b =
            Context::from_names(&["a", "b"], &[], &[None, Some("a")], &[Some("b"), None]).unwrap();
        assert!(!context_iso(&a, &b));
    }
}

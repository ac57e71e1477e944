//! Undirected simple graphs with an ordered tuple of distinct ports.

pub mod enumerate;
mod format;
mod ops;

pub(crate) use format::name_index;
pub use format::GraphFile;
pub use ops::{
    add_port, check_permutation, forget, fuse, invert_permutation, permute, prime_classes,
    prime_factors,
};
pub(crate) use ops::{drop_last_port, fusion_part, port_edges, push_port};

use std::collections::HashMap;

use thiserror::Error;

use crate::canon::canonical_labeling;
use crate::mask::{self, bit, bits};

/// Hard limit on vertex count; vertex sets are `u64` masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex `{0}` is listed as a port twice")]
    DuplicatePort(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("cannot forget a port of an arity-0 graph")]
    ForgetArityZero,
    #[error("{0:?} is not a permutation of 1..={1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("ports {0} carry conflicting labels")]
    LabelConflict(usize),
    #[error("malformed graph file: {0}")]
    Format(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// A nonempty simple undirected graph with ports.
///
/// Vertices are addressed by index; the opaque string ids are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortGraph {
    names: Vec<String>,
    adj: Vec<u64>,
    ports: Vec<usize>,
    labels: Vec<Option<String>>,
}

/// Certificate of the port- and label-preserving isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u8>);

impl PortGraph {
    /// Builds a graph from index-based data, validating every invariant.
    pub fn new(
        names: Vec<String>,
        edges: &[(usize, usize)],
        ports: Vec<usize>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(names[a].clone()));
            }
            if adj[a] & bit(b) != 0 {
                return Err(GraphError::DuplicateEdge(
                    names[a].clone(),
                    names[b].clone(),
                ));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        let mut port_mask = 0u64;
        for &p in &ports {
            if p >= n {
                return Err(GraphError::VertexOutOfRange(p));
            }
            if port_mask & bit(p) != 0 {
                return Err(GraphError::DuplicatePort(names[p].clone()));
            }
            port_mask |= bit(p);
        }
        let labels = if labels.is_empty() {
            vec![None; n]
        } else if labels.len() == n {
            labels
        } else {
            return Err(GraphError::Format(format!(
                "{} labels for {} vertices",
                labels.len(),
                n
            )));
        };
        Ok(PortGraph {
            names,
            adj,
            ports,
            labels,
        })
    }

    /// Builds a graph from vertex names; convenient in tests and fixtures.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)], ports: &[&str]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(s.to_string()))
        };
        let edges = edges
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let ports = ports
            .iter()
            .map(|p| lookup(p))
            .collect::<Result<Vec<_>>>()?;
        PortGraph::new(names, &edges, ports, Vec::new())
    }

    /// Graph whose only vertices are `arity` ports, with the given port-port
    /// edges (1-based port indices).
    pub fn ports_only(arity: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names = (1..=arity).map(|i| format!("p{i}")).collect();
        let edges: Vec<_> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        PortGraph::new(names, &edges, (0..arity).collect(), Vec::new())
    }

    /// Internal constructor for data already known to be valid.
    pub(crate) fn from_parts(
        names: Vec<String>,
        adj: Vec<u64>,
        ports: Vec<usize>,
        labels: Vec<Option<String>>,
    ) -> Self {
        debug_assert!(!names.is_empty() && names.len() <= MAX_VERTICES);
        debug_assert_eq!(names.len(), adj.len());
        debug_assert_eq!(names.len(), labels.len());
        PortGraph {
            names,
            adj,
            ports,
            labels,
        }
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

    pub fn arity(&self) -> usize {
        self.ports.len()
    }

    pub fn ports(&self) -> &[usize] {
        &self.ports
    }

    /// Vertex of the `i`-th port, 0-based.
    pub fn port(&self, i: usize) -> usize {
        self.ports[i]
    }

    pub fn port_mask(&self) -> u64 {
        mask::from_indices(self.ports.iter().copied())
    }

    pub fn all_mask(&self) -> u64 {
        mask::full(self.names.len())
    }

    pub fn is_port(&self, v: usize) -> bool {
        self.ports.contains(&v)
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.names.len())
            .flat_map(move |a| bits(self.adj[a] & !mask::full(a + 1)).map(move |b| (a, b)))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.names.len() {
            return Err(GraphError::Format(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.names.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Fresh vertex name not yet used in this graph.
    pub(crate) fn fresh_name(&self, stem: &str) -> String {
        fresh_name(&self.names, stem)
    }
}

pub(crate) fn fresh_name(names: &[String], stem: &str) -> String {
    if !names.iter().any(|n| n == stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}#{i}"))
        .find(|c| !names.iter().any(|n| n == c))
        .expect("unbounded search")
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &PortGraph) -> Vec<Vec<usize>> {
    mask::components_within(&g.adj, g.all_mask())
        .into_iter()
        .map(|c| bits(c).collect())
        .collect()
}

/// True iff every path from `x` to `y` uses a vertex of `separator`.
///
/// Endpoints inside the separator count as used, so the relation holds
/// whenever `x` or `y` lies in it. With an empty separator this says that
/// `x` and `y` lie in different components; in particular it is false for
/// `x == y`.
pub fn separator_holds(g: &PortGraph, x: usize, y: usize, separator: &[usize]) -> Result<bool> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let mut z = 0u64;
    for &v in separator {
        g.check_vertex(v)?;
        z |= bit(v);
    }
    Ok(separated_by_mask(&g.adj, x, y, z))
}

pub(crate) fn separated_by_mask(adj: &[u64], x: usize, y: usize, z: u64) -> bool {
    if z & (bit(x) | bit(y)) != 0 {
        return true;
    }
    let alive = mask::full(adj.len()) & !z;
    mask::reach_within(adj, alive, x) & bit(y) == 0
}

/// Canonical form preserving port positions and labels.
pub fn canonical_form(g: &PortGraph) -> CanonicalForm {
    canonical_form_with_order(g).0
}

pub(crate) fn canonical_form_with_order(g: &PortGraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.vertex_count();
    let mut port_pos = vec![usize::MAX; n];
    for (i, &p) in g.ports.iter().enumerate() {
        port_pos[p] = i;
    }
    let colors: Vec<(usize, Option<&str>)> = (0..n).map(|v| (port_pos[v], g.label(v))).collect();
    let lab = canonical_labeling(&g.adj, &colors);
    let mut out = Vec::with_capacity(16 + n * 10);
    out.push(g.arity() as u8);
    out.push(n as u8);
    for &v in &lab.order {
        match g.label(v) {
            None => out.push(0),
            Some(s) => {
                out.push(1);
                out.extend_from_slice(&(s.len() as u32).to_le_bytes());
                out.extend_from_slice(s.as_bytes());
            }
        }
    }
    for row in &lab.code {
        out.extend_from_slice(&row.to_le_bytes()[..n.div_ceil(8)]);
    }
    (CanonicalForm(out), lab.order)
}

/// Port- and label-preserving isomorphism test.
pub fn iso(g: &PortGraph, h: &PortGraph) -> bool {
    g.arity() == h.arity()
        && g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && canonical_form(g) == canonical_form(h)
}

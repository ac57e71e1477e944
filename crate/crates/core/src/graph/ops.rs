//! The treewidth operations and prime factorization.

use super::{fresh_name, GraphError, PortGraph, Result, MAX_VERTICES};
use crate::mask::{bit, bits, components_within};

/// Disjoint union with the `i`-th ports identified; port-port edges
/// accumulate. Non-port names of `h` that clash with `g` are renamed.
pub fn fuse(g: &PortGraph, h: &PortGraph) -> Result<PortGraph> {
    let k = g.arity();
    if h.arity() != k {
        return Err(GraphError::ArityMismatch(k, h.arity()));
    }
    let extra = h.vertex_count() - k;
    if g.vertex_count() + extra > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(g.vertex_count() + extra));
    }
    let mut names = g.names.clone();
    let mut labels = g.labels.clone();
    let mut map = vec![usize::MAX; h.vertex_count()];
    for (i, &p) in h.ports.iter().enumerate() {
        let q = g.ports[i];
        map[p] = q;
        match (&labels[q], &h.labels[p]) {
            (Some(a), Some(b)) if a != b => return Err(GraphError::LabelConflict(i + 1)),
            (None, Some(b)) => labels[q] = Some(b.clone()),
            _ => {}
        }
    }
    for v in 0..h.vertex_count() {
        if map[v] == usize::MAX {
            map[v] = names.len();
            let name = fresh_name(&names, &h.names[v]);
            names.push(name);
            labels.push(h.labels[v].clone());
        }
    }
    let mut adj = g.adj.clone();
    adj.resize(names.len(), 0);
    for (a, b) in h.edges() {
        let (x, y) = (map[a], map[b]);
        adj[x] |= bit(y);
        adj[y] |= bit(x);
    }
    Ok(PortGraph::from_parts(names, adj, g.ports.clone(), labels))
}

/// Drops the last port; the vertex stays as an ordinary vertex.
pub fn forget(g: &PortGraph) -> Result<PortGraph> {
    if g.arity() == 0 {
        return Err(GraphError::ForgetArityZero);
    }
    let mut out = g.clone();
    out.ports.pop();
    Ok(out)
}

/// Adds an isolated vertex that becomes the new last port.
pub fn add_port(g: &PortGraph) -> Result<PortGraph> {
    let n = g.vertex_count();
    if n + 1 > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n + 1));
    }
    let mut out = g.clone();
    let name = g.fresh_name(&format!("p{}", g.arity() + 1));
    out.names.push(name);
    out.adj.push(0);
    out.labels.push(None);
    out.ports.push(n);
    Ok(out)
}

/// Reorders ports: new port `i` is old port `sigma[i]` (both 1-based).
pub fn permute(g: &PortGraph, sigma: &[usize]) -> Result<PortGraph> {
    let k = g.arity();
    check_permutation(sigma, k)?;
    let mut out = g.clone();
    out.ports = sigma.iter().map(|&s| g.ports[s - 1]).collect();
    Ok(out)
}

pub fn check_permutation(sigma: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    let ok = sigma.len() == k
        && sigma
            .iter()
            .all(|&s| (1..=k).contains(&s) && !std::mem::replace(&mut seen[s - 1], true));
    if ok {
        Ok(())
    } else {
        Err(GraphError::NotAPermutation(sigma.to_vec(), k))
    }
}

pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s - 1] = i + 1;
    }
    inv
}

/// Classes of non-port vertices joined by port-avoiding paths, as masks.
pub fn prime_classes(g: &PortGraph) -> Vec<u64> {
    components_within(&g.adj, g.all_mask() & !g.port_mask())
}

/// One factor per prime class: the ports plus the class, induced.
pub fn prime_factors(g: &PortGraph) -> Vec<PortGraph> {
    prime_classes(g)
        .into_iter()
        .map(|c| induced(g, c, true))
        .collect()
}

/// Subgraph on the ports plus `extra`; port-port edges kept only when asked.
pub(crate) fn induced(g: &PortGraph, extra: u64, port_edges: bool) -> PortGraph {
    let pm = g.port_mask();
    let keep = extra | pm;
    let mut index = vec![usize::MAX; g.vertex_count()];
    let mut order: Vec<usize> = g.ports.clone();
    order.extend(bits(extra & !pm));
    for (i, &v) in order.iter().enumerate() {
        index[v] = i;
    }
    let mut adj = vec![0u64; order.len()];
    for (i, &v) in order.iter().enumerate() {
        let mut nb = g.adj[v] & keep;
        if !port_edges && pm & bit(v) != 0 {
            nb &= !pm;
        }
        adj[i] = bits(nb).fold(0, |m, u| m | bit(index[u]));
    }
    let names = order.iter().map(|&v| g.names[v].clone()).collect();
    let labels = order.iter().map(|&v| g.labels[v].clone()).collect();
    PortGraph::from_parts(names, adj, (0..g.arity()).collect(), labels)
}

/// Ports plus the non-port vertices in `extra`, keeping only the port-port
/// edges listed by 0-based port position.
pub(crate) fn fusion_part(g: &PortGraph, extra: u64, port_edges: &[(usize, usize)]) -> PortGraph {
    let mut out = induced(g, extra, false);
    for &(i, j) in port_edges {
        out.adj[i] |= bit(j);
        out.adj[j] |= bit(i);
    }
    out
}

/// Port-port edges as pairs of 0-based port positions.
pub(crate) fn port_edges(g: &PortGraph) -> Vec<(usize, usize)> {
    let k = g.arity();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(g.ports[i], g.ports[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Makes the non-port vertex `v` the new last port.
pub(crate) fn push_port(g: &PortGraph, v: usize) -> PortGraph {
    debug_assert!(!g.is_port(v));
    let mut out = g.clone();
    out.ports.push(v);
    out
}

/// Deletes the last port together with its vertex. `None` if that would
/// leave no vertices.
pub(crate) fn drop_last_port(g: &PortGraph) -> Option<PortGraph> {
    let &v = g.ports.last()?;
    if g.vertex_count() == 1 {
        return None;
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&u| u != v).collect();
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let adj = keep
        .iter()
        .map(|&u| bits(g.adj[u] & !bit(v)).fold(0, |m, w| m | bit(shift(w))))
        .collect();
    let names = keep.iter().map(|&u| g.names[u].clone()).collect();
    let labels = keep.iter().map(|&u| g.labels[u].clone()).collect();
    let ports = g.ports[..g.arity() - 1].iter().map(|&p| shift(p)).collect();
    Some(PortGraph::from_parts(names, adj, ports, labels))
}

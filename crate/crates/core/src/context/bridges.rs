use super::Context;
use crate::mask::{bit, bits, components_within};

/// Indices `i` (0-based) with `left(i) = right(i)`, as a mask.
pub fn persistent_ports(w: &Context) -> u64 {
    (0..w.arity())
        .filter(|&i| w.left(i).is_some() && w.left(i) == w.right(i))
        .fold(0, |m, i| m | bit(i))
}

/// Edges grouped into classes connected through non-port vertices. An edge
/// between two ports forms a class of its own. Each class is sorted; classes
/// are ordered by their first edge.
pub fn inner_components(w: &Context) -> Vec<Vec<(usize, usize)>> {
    let ports = w.port_vertices();
    let inner = w.all_mask() & !ports;
    let comps = components_within(w.adjacency(), inner);
    let mut owner = vec![usize::MAX; w.vertex_count()];
    for (c, &m) in comps.iter().enumerate() {
        for v in bits(m) {
            owner[v] = c;
        }
    }
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); comps.len()];
    for (a, b) in w.edges() {
        let o = if owner[a] != usize::MAX {
            owner[a]
        } else {
            owner[b]
        };
        if o == usize::MAX {
            groups.push(vec![(a, b)]);
        } else {
            groups[o].push((a, b));
        }
    }
    groups.retain(|g| !g.is_empty());
    groups.sort();
    groups
}

/// Inner components with an edge at a non-persistent left port and an edge
/// at a non-persistent right port.
pub fn bridges(w: &Context) -> Vec<Vec<(usize, usize)>> {
    let pers = bits(persistent_ports(w)).fold(0u64, |m, i| m | bit(w.left(i).unwrap()));
    let lefts = w.left_vertices() & !pers;
    let rights = w.right_vertices() & !pers;
    inner_components(w)
        .into_iter()
        .filter(|comp| {
            let touched = comp.iter().fold(0u64, |m, &(a, b)| m | bit(a) | bit(b));
            touched & lefts != 0 && touched & rights != 0
        })
        .collect()
}

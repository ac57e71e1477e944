//! Small helpers for vertex sets stored as `u64` bitmasks.

/// Vertex set over at most 64 vertices.
pub type VertexMask = u64;

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

pub fn bits(mask: u64) -> Bits {
    Bits(mask)
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> u64 {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

/// Vertices reachable from `start` moving only through `alive` vertices.
/// `start` itself must be alive to be reported.
pub fn reach_within(adj: &[u64], alive: u64, start: usize) -> u64 {
    if alive & bit(start) == 0 {
        return 0;
    }
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= alive & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components of the subgraph induced by `alive`, ordered by
/// their smallest vertex.
pub fn components_within(adj: &[u64], alive: u64) -> Vec<u64> {
    let mut rest = alive;
    let mut out = Vec::new();
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let comp = reach_within(adj, alive, v);
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// Vertices reachable from `start` by paths whose interior lies in `through`.
/// Vertices outside `through` may still be reached as endpoints.
pub fn reach_through(adj: &[u64], through: u64, start: usize) -> u64 {
    let mut seen = bit(start);
    let mut frontier = bit(start);
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= !seen;
        seen |= next;
        frontier = next & through;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_roundtrip() {
        let m = from_indices([0, 3, 63]);
        assert_eq!(bits(m).collect::<Vec<_>>(), vec![0, 3, 63]);
        assert_eq!(full(64), u64::MAX);
        assert_eq!(full(3), 0b111);
    }

    #[test]
    fn components_of_path_and_point() {
        // 0 - 1   2
        let adj = vec![0b010, 0b001, 0b000];
        assert_eq!(components_within(&adj, 0b111), vec![0b011, 0b100]);
        assert_eq!(reach_within(&adj, 0b101, 0), 0b001);
    }

    #[test]
    fn reach_through_stops_at_blocked() {
        // 0 - 1 - 2, interior may not use 1
        let adj = vec![0b010, 0b101, 0b010];
        assert_eq!(reach_through(&adj, 0b101, 0), 0b011);
        assert_eq!(reach_through(&adj, 0b111, 0), 0b111);
    }
}

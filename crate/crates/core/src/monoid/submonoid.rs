use std::collections::HashMap;
use std::hash::Hash;

use super::FiniteMonoid;

/// Elements reachable from a unit by right multiplication with generators,
/// in breadth-first order. `words[i]` is the shortlex-least generator word
/// of `elements[i]`; the unit comes first with the empty word.
#[derive(Clone, Debug)]
pub struct Generated<T> {
    pub elements: Vec<T>,
    pub words: Vec<Vec<usize>>,
    /// Index of `elements[i] * generator g`, as `right[i][g]`.
    pub right: Vec<Vec<usize>>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Generated<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Index reached by a generator word from the unit.
    pub fn walk(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |i, &g| self.right[i][g])
    }

    /// Full multiplication table; `mul` must be the operation used to
    /// generate, so that the set is closed.
    pub fn to_monoid(&self, mut mul: impl FnMut(&T, &T) -> T) -> FiniteMonoid {
        let n = self.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p = mul(&self.elements[a], &self.elements[b]);
                        self.index_of(&p).expect("generated set is closed")
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::from_trusted(0, table, None)
    }
}

/// Breadth-first closure of `gens` under `mul`, starting from `unit`.
pub fn generate<T: Clone + Eq + Hash>(
    unit: T,
    gens: &[T],
    mut mul: impl FnMut(&T, &T) -> T,
) -> Generated<T> {
    let mut out = Generated {
        elements: vec![unit.clone()],
        words: vec![Vec::new()],
        right: Vec::new(),
        index: HashMap::from([(unit, 0)]),
    };
    let mut i = 0;
    while i < out.elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (g, x) in gens.iter().enumerate() {
            let p = mul(&out.elements[i], x);
            let j = match out.index.get(&p) {
                Some(&j) => j,
                None => {
                    let j = out.elements.len();
                    let mut w = out.words[i].clone();
                    w.push(g);
                    out.index.insert(p.clone(), j);
                    out.elements.push(p);
                    out.words.push(w);
                    j
                }
            };
            row.push(j);
        }
        out.right.push(row);
        i += 1;
    }
    out
}

/// Submonoid of a product of monoids generated by tuples: `maps[g][c]` is
/// the element of generator `g` in component monoid `c`.
pub fn generated_submonoid(
    monoids: &[&FiniteMonoid],
    maps: &[Vec<usize>],
) -> Generated<Vec<usize>> {
    let unit: Vec<usize> = monoids.iter().map(|m| m.identity()).collect();
    generate(unit, maps, |a, b| {
        monoids
            .iter()
            .zip(a.iter().zip(b))
            .map(|(m, (&x, &y))| m.mul(x, y))
            .collect()
    })
}

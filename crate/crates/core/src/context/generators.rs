use std::collections::BTreeMap;

use super::{compose, context_form, Context, ContextError, Result};
use crate::graph::CanonicalForm;
use crate::mask::bit;

/// All contexts of arity `k` with between 1 and `k + 1` vertices, one per
/// isomorphism class, ordered by vertex count and then certificate.
#[derive(Clone, Debug)]
pub struct GeneratorAlphabet {
    arity: usize,
    gens: Vec<Context>,
}

impl GeneratorAlphabet {
    /// A custom alphabet; each context must have arity `k` and at most
    /// `k + 1` vertices. Repeats are kept, so two ids may be isomorphic.
    pub fn from_generators(k: usize, gens: Vec<Context>) -> Result<Self> {
        if k < 1 {
            return Err(ContextError::ArityZero);
        }
        for g in &gens {
            if g.arity() != k {
                return Err(ContextError::ArityMismatch(g.arity(), k));
            }
            if g.vertex_count() > k + 1 {
                return Err(ContextError::Format(format!(
                    "a generator has {} vertices, at most {} allowed",
                    g.vertex_count(),
                    k + 1
                )));
            }
        }
        Ok(GeneratorAlphabet { arity: k, gens })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Context> {
        self.gens.get(id)
    }

    pub fn generators(&self) -> &[Context] {
        &self.gens
    }

    /// Stable textual id, `g0`, `g1`, ...
    pub fn id_name(id: usize) -> String {
        format!("g{id}")
    }

    pub fn parse_id(&self, s: &str) -> Result<usize> {
        s.strip_prefix('g')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&i| i < self.gens.len())
            .ok_or_else(|| ContextError::UnknownGenerator(s.to_string()))
    }

    /// Position of a context isomorphic to `c`, if it is a generator.
    pub fn find(&self, c: &Context) -> Option<usize> {
        let f = context_form(c);
        self.gens.iter().position(|g| context_form(g) == f)
    }
}

pub fn enumerate_k_generators(k: usize) -> Result<GeneratorAlphabet> {
    if k < 1 {
        return Err(ContextError::ArityZero);
    }
    // vertex states (left index + 1 or 0, right index + 1 or 0)
    let states: Vec<(usize, usize)> = (0..=k)
        .flat_map(|l| (0..=k).map(move |r| (l, r)))
        .filter(|&(l, r)| l == 0 || r == 0 || l == r)
        .collect();
    let mut found: BTreeMap<(usize, CanonicalForm), Context> = BTreeMap::new();
    for n in 1..=k + 1 {
        let mut seq = Vec::with_capacity(n);
        multisets(&states, n, 0, &mut seq, &mut |choice| {
            let Some((left, right)) = port_maps(k, choice) else {
                return;
            };
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect();
            for code in 0u64..(1 << pairs.len()) {
                let mut adj = vec![0u64; n];
                for (e, &(a, b)) in pairs.iter().enumerate() {
                    if code & bit(e) != 0 {
                        adj[a] |= bit(b);
                        adj[b] |= bit(a);
                    }
                }
                let names = (0..n).map(|i| format!("v{i}")).collect();
                let c = Context::from_parts(names, adj, left.clone(), right.clone());
                found.entry((n, context_form(&c))).or_insert(c);
            }
        });
    }
    Ok(GeneratorAlphabet {
        arity: k,
        gens: found.into_values().collect(),
    })
}

fn multisets<T: Copy>(
    items: &[T],
    n: usize,
    from: usize,
    seq: &mut Vec<T>,
    f: &mut dyn FnMut(&[T]),
) {
    if seq.len() == n {
        f(seq);
        return;
    }
    for i in from..items.len() {
        seq.push(items[i]);
        multisets(items, n, i, seq, f);
        seq.pop();
    }
}

type PortMaps = (Vec<Option<usize>>, Vec<Option<usize>>);

fn port_maps(k: usize, choice: &[(usize, usize)]) -> Option<PortMaps> {
    let mut left = vec![None; k];
    let mut right = vec![None; k];
    for (v, &(l, r)) in choice.iter().enumerate() {
        if l > 0 {
            if left[l - 1].is_some() {
                return None;
            }
            left[l - 1] = Some(v);
        }
        if r > 0 {
            if right[r - 1].is_some() {
                return None;
            }
            right[r - 1] = Some(v);
        }
    }
    Some((left, right))
}

/// Left fold of composition over a nonempty word of generator ids.
pub fn build_from_word(alphabet: &GeneratorAlphabet, word: &[usize]) -> Result<Context> {
    let (&first, rest) = word.split_first().ok_or(ContextError::EmptyWord)?;
    let get = |id: usize| {
        alphabet
            .get(id)
            .ok_or_else(|| ContextError::UnknownGenerator(GeneratorAlphabet::id_name(id)))
    };
    let mut acc = get(first)?.clone();
    for &id in rest {
        acc = compose(&acc, get(id)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::context_iso;

    #[test]
    fn arity_one_alphabet() {
        let a = enumerate_k_generators(1).unwrap();
        assert_eq!(a.len(), 14);
        let small = a
            .generators()
            .iter()
            .filter(|g| g.vertex_count() == 1)
            .count();
        assert_eq!(small, 4);
    }

    #[test]
    fn arity_zero_rejected() {
        assert_eq!(
            enumerate_k_generators(0).unwrap_err(),
            ContextError::ArityZero
        );
    }

    #[test]
    fn pairwise_distinct() {
        let a = enumerate_k_generators(2).unwrap();
        for (i, g) in a.generators().iter().enumerate() {
            for h in &a.generators()[i + 1..] {
                assert!(!context_iso(g, h));
            }
        }
        assert_eq!(a.find(&a.generators()[5]), Some(5));
    }

    #[test]
    fn word_building() {
        let a = enumerate_k_generators(1).unwrap();
        assert!(context_iso(
            &build_from_word(&a, &[3]).unwrap(),
            a.get(3).unwrap()
        ));
        let uv = compose(a.get(2).unwrap(), a.get(7).unwrap()).unwrap();
        assert!(context_iso(&build_from_word(&a, &[2, 7]).unwrap(), &uv));
        assert_eq!(
            build_from_word(&a, &[]).unwrap_err(),
            ContextError::EmptyWord
        );
        assert!(build_from_word(&a, &[99]).is_err());
        assert_eq!(a.parse_id("g13"), Ok(13));
        assert!(a.parse_id("g14").is_err());
    }
}

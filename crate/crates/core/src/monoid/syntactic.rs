use std::collections::HashMap;

use super::{generated_submonoid, FiniteMonoid, Recognizer};

/// The syntactic quotient of a recognizer and the class of every original
/// element; elements outside the generated submonoid have no class.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub recognizer: Recognizer,
    pub class_of: Vec<Option<usize>>,
}

/// Minimizes a recognizer on the submonoid generated by its generator images.
///
/// Moore refinement starting from the accepting partition: two elements stay
/// together while multiplying both by any generator, on either side, lands
/// in the same block. The result is the coarsest congruence that saturates
/// the accepting set.
pub fn syntactic_quotient(r: &Recognizer) -> Quotient {
    let m = &r.monoid;
    let maps: Vec<Vec<usize>> = r.gen_map.iter().map(|&g| vec![g]).collect();
    let gen = generated_submonoid(&[m], &maps);
    let elems: Vec<usize> = gen.elements.iter().map(|t| t[0]).collect();
    let mut gens: Vec<usize> = r.gen_map.clone();
    gens.sort_unstable();
    gens.dedup();

    let mut pos = vec![usize::MAX; m.size()];
    for (i, &a) in elems.iter().enumerate() {
        pos[a] = i;
    }
    let mut block: Vec<usize> = elems.iter().map(|&a| usize::from(r.accepting[a])).collect();
    let mut count = 0;
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = elems
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut sig = Vec::with_capacity(1 + 2 * gens.len());
                sig.push(block[i]);
                for &g in &gens {
                    sig.push(block[pos[m.mul(a, g)]]);
                    sig.push(block[pos[m.mul(g, a)]]);
                }
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let stable = ids.len() == count;
        count = ids.len();
        block = next;
        if stable {
            break;
        }
    }
    // blocks are numbered by first occurrence in breadth-first order, so the
    // identity's block is 0
    let mut rep = vec![usize::MAX; count];
    for (i, &b) in block.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = elems[i];
        }
    }
    let table = (0..count)
        .map(|x| {
            (0..count)
                .map(|y| block[pos[m.mul(rep[x], rep[y])]])
                .collect()
        })
        .collect();
    let zero = m
        .zero()
        .filter(|&z| pos[z] != usize::MAX)
        .map(|z| block[pos[z]]);
    let monoid = FiniteMonoid::from_trusted(block[pos[m.identity()]], table, zero);
    let accepting = (0..count).map(|c| r.accepting[rep[c]]).collect();
    let gen_map = r.gen_map.iter().map(|&g| block[pos[g]]).collect();
    let class_of = (0..m.size())
        .map(|a| (pos[a] != usize::MAX).then(|| block[pos[a]]))
        .collect();
    Quotient {
        recognizer: Recognizer {
            monoid,
            gen_map,
            accepting,
            arity: r.arity,
        },
        class_of,
    }
}

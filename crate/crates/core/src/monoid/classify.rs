use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::recognizers::beta_mul;
use super::{generate, green, syntactic_quotient, Recognizer, Result};
use crate::context::{beta, bridges, build_from_word, GeneratorAlphabet, ReachabilityType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    /// Every element of the class is aperiodic.
    AllAperiodic,
    /// Some element is not aperiodic and every sampled context had at least
    /// two bridges.
    NeedsTwoBridges,
    /// Some element is not aperiodic and a sampled context had at most one
    /// bridge.
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub elements: Vec<usize>,
    pub tag: Tag,
    pub has_idempotent: bool,
    /// Fewest bridges among sampled contexts; only sampled for classes that
    /// are not all aperiodic.
    pub min_bridges: Option<usize>,
    pub samples: usize,
    /// A sampled word reaching the fewest bridges.
    pub example: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// Size of the classified monoid, including the formal unit when paired.
    pub size: usize,
    pub classes: Vec<ClassReport>,
}

/// Tags the infix classes of the syntactic quotient of `r`.
///
/// With `pair_with_beta` the quotient is first multiplied with the
/// reachability homomorphism, so that the classified monoid refines it.
/// Each class with a non-aperiodic element is sampled: the shortest word of
/// each of its elements, plus `random_words` random words of length up to
/// `max_len` from a ChaCha stream seeded with `seed`.
pub fn classify_infix_classes(
    r: &Recognizer,
    alphabet: &GeneratorAlphabet,
    pair_with_beta: bool,
    random_words: usize,
    max_len: usize,
    seed: u64,
) -> Result<Classification> {
    r.check_alphabet(alphabet)?;
    let q = syntactic_quotient(r).recognizer;
    let m = &q.monoid;
    type Pair = (usize, Option<ReachabilityType>);
    let gens: Vec<Pair> = alphabet
        .generators()
        .iter()
        .zip(&q.gen_map)
        .map(|(g, &a)| (a, pair_with_beta.then(|| beta(g))))
        .collect();
    let mul = |x: &Pair, y: &Pair| (m.mul(x.0, y.0), beta_mul(&x.1, &y.1));
    let gen = generate((m.identity(), None), &gens, mul);
    let monoid = gen.to_monoid(mul);
    let g = green(&monoid);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random: Vec<Vec<usize>> = Vec::with_capacity(random_words);
    if !alphabet.is_empty() && max_len > 0 {
        for _ in 0..random_words {
            let len = rng.gen_range(1..=max_len);
            random.push((0..len).map(|_| rng.gen_range(0..alphabet.len())).collect());
        }
    }
    let landing: Vec<usize> = random
        .iter()
        .map(|w| g.infix_class_of(gen.walk(w)))
        .collect();

    let mut classes = Vec::with_capacity(g.infix_classes.len());
    for (c, members) in g.infix_classes.iter().enumerate() {
        let has_idempotent = members.iter().any(|&a| monoid.is_idempotent(a));
        if members.iter().all(|&a| monoid.is_aperiodic_element(a)) {
            classes.push(ClassReport {
                elements: members.clone(),
                tag: Tag::AllAperiodic,
                has_idempotent,
                min_bridges: None,
                samples: 0,
                example: None,
            });
            continue;
        }
        let mut words: Vec<&Vec<usize>> = members
            .iter()
            .map(|&a| &gen.words[a])
            .filter(|w| !w.is_empty())
            .collect();
        words.extend(
            random
                .iter()
                .zip(&landing)
                .filter(|(_, &l)| l == c)
                .map(|(w, _)| w),
        );
        let mut best: Option<(usize, Vec<usize>)> = None;
        for w in &words {
            let ctx = build_from_word(alphabet, w)?;
            let b = bridges(&ctx).len();
            if best.as_ref().is_none_or(|(x, _)| b < *x) {
                best = Some((b, (*w).clone()));
            }
        }
        let tag = match &best {
            Some((b, _)) if *b < 2 => Tag::Mixed,
            _ => Tag::NeedsTwoBridges,
        };
        classes.push(ClassReport {
            elements: members.clone(),
            tag,
            has_idempotent,
            min_bridges: best.as_ref().map(|(b, _)| *b),
            samples: words.len(),
            example: best.map(|(_, w)| w),
        });
    }
    Ok(Classification {
        size: monoid.size(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::enumerate_k_generators;
    use crate::monoid::{beta_recognizer, FiniteMonoid};

    #[test]
    fn trivial_monoid_has_one_class() {
        let a = enumerate_k_generators(1).unwrap();
        let r = Recognizer::new(FiniteMonoid::trivial(), vec![0; a.len()], vec![true], 1).unwrap();
        let c = classify_infix_classes(&r, &a, false, 10, 3, 7).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.classes[0].tag, Tag::AllAperiodic);
    }

    #[test]
    fn beta_at_arity_one_is_aperiodic() {
        let a = enumerate_k_generators(1).unwrap();
        let (r, _) = beta_recognizer(&a, |t| t.persistent != 0);
        let c = classify_infix_classes(&r, &a, true, 50, 4, 1).unwrap();
        assert!(c.classes.iter().all(|x| x.tag == Tag::AllAperiodic));
    }
}

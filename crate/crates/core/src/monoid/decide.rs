use std::collections::HashMap;

use serde::Serialize;

use super::recognizers::beta_mul;
use super::{generate, Recognizer, Result};
use crate::context::{
    beta, beta_compose, build_from_word, compose, context_form, GeneratorAlphabet, ReachabilityType,
};
use crate::graph::CanonicalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    AperiodicModReachability,
    Violation,
}

/// A generator word whose reachability type is idempotent while its
/// recognizer image is not aperiodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub word: Vec<usize>,
    pub alpha: usize,
    pub beta: ReachabilityType,
    /// `alpha^1, ..., alpha^(n+1)` for a monoid of size `n`.
    pub powers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    /// Size of the generated monoid of (alpha, beta) pairs, unit included.
    pub pairs: usize,
}

type Pair = (usize, Option<ReachabilityType>);

/// Explores every pair `(alpha(w), beta(w))` for generator words `w` and
/// reports a violation when some pair has an idempotent reachability type
/// and a non-aperiodic recognizer image. The witness word is shortlex least.
pub fn decide_aperiodic_mod_reachability(
    r: &Recognizer,
    alphabet: &GeneratorAlphabet,
) -> Result<Verdict> {
    r.check_alphabet(alphabet)?;
    let m = &r.monoid;
    let gens: Vec<Pair> = alphabet
        .generators()
        .iter()
        .zip(&r.gen_map)
        .map(|(g, &a)| (a, Some(beta(g))))
        .collect();
    let gen = generate((m.identity(), None), &gens, |x: &Pair, y: &Pair| {
        (m.mul(x.0, y.0), beta_mul(&x.1, &y.1))
    });
    let mut idempotent: HashMap<&ReachabilityType, bool> = HashMap::new();
    for (i, (a, t)) in gen.elements.iter().enumerate() {
        let Some(t) = t else { continue };
        if m.is_aperiodic_element(*a) {
            continue;
        }
        let idem = *idempotent
            .entry(t)
            .or_insert_with(|| beta_compose(t, t).expect("equal arity") == *t);
        if idem {
            let witness = Witness {
                word: gen.words[i].clone(),
                alpha: *a,
                beta: t.clone(),
                powers: (1..=m.size() + 1).map(|e| m.power(*a, e)).collect(),
            };
            return Ok(Verdict {
                outcome: Outcome::Violation,
                witness: Some(witness),
                pairs: gen.len(),
            });
        }
    }
    Ok(Verdict {
        outcome: Outcome::AperiodicModReachability,
        witness: None,
        pairs: gen.len(),
    })
}

/// What re-checking a witness from the definitions found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    /// `beta(w w) = beta(w)`, computed on the built contexts.
    pub beta_idempotent: bool,
    /// The recognizer image of the word, multiplied out from the generator map.
    pub alpha: usize,
    /// `alpha^m != alpha^(m+1)` for every `1 <= m <= |A|`.
    pub alpha_never_stabilizes: bool,
}

impl WitnessCheck {
    pub fn confirms(&self) -> bool {
        self.beta_idempotent && self.alpha_never_stabilizes
    }
}

pub fn verify_witness(
    r: &Recognizer,
    alphabet: &GeneratorAlphabet,
    word: &[usize],
) -> Result<WitnessCheck> {
    r.check_alphabet(alphabet)?;
    let w = build_from_word(alphabet, word)?;
    let ww = compose(&w, &w)?;
    let m = &r.monoid;
    let a = r.eval(word);
    let never = (1..=m.size()).all(|e| m.power(a, e) != m.power(a, e + 1));
    Ok(WitnessCheck {
        beta_idempotent: beta(&ww) == beta(&w),
        alpha: a,
        alpha_never_stabilizes: never,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Audit {
    /// No conflict among all words up to the bound.
    Consistent { words: usize, contexts: usize },
    /// Two words building isomorphic contexts with different images.
    Counterexample {
        first: Vec<usize>,
        second: Vec<usize>,
        first_value: usize,
        second_value: usize,
    },
}

/// Checks that the recognizer is constant on isomorphism classes of built
/// contexts, for all words of length `1..=max_len`. Words sharing a prefix
/// share its context.
pub fn audit_well_defined(
    r: &Recognizer,
    alphabet: &GeneratorAlphabet,
    max_len: usize,
) -> Result<Audit> {
    r.check_alphabet(alphabet)?;
    let mut seen: HashMap<CanonicalForm, (usize, Vec<usize>)> = HashMap::new();
    let mut words = 0usize;
    let mut stack: Vec<(Vec<usize>, crate::context::Context, usize)> = Vec::new();
    for (g, c) in alphabet.generators().iter().enumerate().rev() {
        stack.push((vec![g], c.clone(), r.gen_map[g]));
    }
    while let Some((word, ctx, value)) = stack.pop() {
        words += 1;
        let form = context_form(&ctx);
        match seen.get(&form) {
            Some((v, other)) if *v != value => {
                return Ok(Audit::Counterexample {
                    first: other.clone(),
                    second: word,
                    first_value: *v,
                    second_value: value,
                });
            }
            Some(_) => {}
            None => {
                seen.insert(form, (value, word.clone()));
            }
        }
        if word.len() < max_len {
            for (g, c) in alphabet.generators().iter().enumerate().rev() {
                let mut w = word.clone();
                w.push(g);
                let next = compose(&ctx, c)?;
                stack.push((w, next, r.monoid.mul(value, r.gen_map[g])));
            }
        }
    }
    Ok(Audit::Consistent {
        words,
        contexts: seen.len(),
    })
}

//! Finite monoids, recognizers over the generator alphabet, and the
//! aperiodicity-modulo-reachability decision procedure.

mod certify;
mod classify;
mod decide;
mod format;
mod green;
pub mod oracles;
mod recognizers;
mod submonoid;
mod syntactic;

pub use certify::{certify_non_star_free, eventually_alternating, Certificate};
pub use classify::{classify_infix_classes, ClassReport, Classification, Tag};
pub use decide::{
    audit_well_defined, decide_aperiodic_mod_reachability, verify_witness, Audit, Outcome, Verdict,
    Witness, WitnessCheck,
};
pub use format::{MonoidFile, RecognizerFile};
pub use green::{green, Green};
pub use recognizers::{beta_monoid, beta_recognizer, vertex_count_recognizer, BetaMonoid};
pub use submonoid::{generate, generated_submonoid, Generated};
pub use syntactic::{syntactic_quotient, Quotient};

use thiserror::Error;

use crate::context::ContextError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("monoid has no elements")]
    Empty,
    #[error("table has {rows} rows of lengths {cols:?}, expected {size}x{size}")]
    TableShape {
        size: usize,
        rows: usize,
        cols: Vec<usize>,
    },
    #[error("table entry {0}*{1} = {2} is out of range")]
    OutOfRange(usize, usize, usize),
    #[error("element {0} is out of range for a monoid of size {1}")]
    BadElement(usize, usize),
    #[error("{0} is not an identity: {0}*{1} = {2}")]
    NotIdentity(usize, usize, usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{0} is not absorbing: {0}*{1} = {2}")]
    NotZero(usize, usize, usize),
    #[error("generator map covers {0} generators, the alphabet has {1}")]
    GenMapSize(usize, usize),
    #[error("generator map has no entry for `{0}`")]
    GenMapMissing(String),
    #[error("recognizer arity {0} does not match alphabet arity {1}")]
    ArityMismatch(usize, usize),
    #[error("beta of the context is not idempotent")]
    NotIdempotent,
    #[error("automaton transition {0} maps to state {1} of {2}")]
    BadTransition(usize, usize, usize),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T, E = MonoidError> = std::result::Result<T, E>;

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    identity: usize,
    table: Vec<Vec<usize>>,
    zero: Option<usize>,
}

impl FiniteMonoid {
    pub fn new(identity: usize, table: Vec<Vec<usize>>, zero: Option<usize>) -> Result<Self> {
        let m = FiniteMonoid {
            identity,
            table,
            zero,
        };
        m.validate()?;
        Ok(m)
    }

    /// Skips the cubic associativity check; the table must come from an
    /// associative operation.
    pub(crate) fn from_trusted(
        identity: usize,
        table: Vec<Vec<usize>>,
        zero: Option<usize>,
    ) -> Self {
        let m = FiniteMonoid {
            identity,
            table,
            zero,
        };
        debug_assert!(m.validate_shape().is_ok());
        m
    }

    pub fn trivial() -> Self {
        Self::from_trusted(0, vec![vec![0]], None)
    }

    /// The cyclic group of order `n`, element `i` standing for `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_trusted(0, table, None)
    }

    /// Transition monoid of a deterministic automaton with `states` states;
    /// `delta[c][q]` is the successor of `q` under letter `c`. Returns the
    /// monoid and the element of each letter. Words act left to right.
    pub fn transition(states: usize, delta: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        for row in delta {
            if row.len() != states {
                return Err(MonoidError::Format(format!(
                    "transition row has {} entries for {states} states",
                    row.len()
                )));
            }
            if let Some((q, &t)) = row.iter().enumerate().find(|(_, &t)| t >= states) {
                return Err(MonoidError::BadTransition(q, t, states));
            }
        }
        let unit: Vec<usize> = (0..states).collect();
        let then = |f: &Vec<usize>, g: &Vec<usize>| f.iter().map(|&q| g[q]).collect::<Vec<_>>();
        let gen = generate(unit, delta, then);
        let letters = delta
            .iter()
            .map(|d| gen.index_of(d).expect("generated"))
            .collect();
        Ok((gen.to_monoid(then), letters))
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn product(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// `a^m`, with `a^0` the identity.
    pub fn power(&self, a: usize, m: usize) -> usize {
        (0..m).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.is_idempotent(a))
            .collect()
    }

    /// Whether `a^m = a^(m+1)` for some `m <= size`.
    pub fn is_aperiodic_element(&self, a: usize) -> bool {
        let mut p = a;
        for _ in 0..=self.size() {
            let next = self.mul(p, a);
            if next == p {
                return true;
            }
            p = next;
        }
        false
    }

    pub fn is_aperiodic(&self) -> bool {
        (0..self.size()).all(|a| self.is_aperiodic_element(a))
    }

    fn validate_shape(&self) -> Result<()> {
        let n = self.table.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        if self.table.iter().any(|r| r.len() != n) {
            return Err(MonoidError::TableShape {
                size: n,
                rows: n,
                cols: self.table.iter().map(Vec::len).collect(),
            });
        }
        for (a, row) in self.table.iter().enumerate() {
            if let Some((b, &c)) = row.iter().enumerate().find(|(_, &c)| c >= n) {
                return Err(MonoidError::OutOfRange(a, b, c));
            }
        }
        if self.identity >= n {
            return Err(MonoidError::BadElement(self.identity, n));
        }
        if let Some(z) = self.zero {
            if z >= n {
                return Err(MonoidError::BadElement(z, n));
            }
        }
        Ok(())
    }

    /// Shape, identity laws, absorbing zero and associativity over all triples.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        let n = self.size();
        let e = self.identity;
        for a in 0..n {
            if self.mul(e, a) != a {
                return Err(MonoidError::NotIdentity(e, a, self.mul(e, a)));
            }
            if self.mul(a, e) != a {
                return Err(MonoidError::NotIdentity(e, a, self.mul(a, e)));
            }
        }
        if let Some(z) = self.zero {
            for a in 0..n {
                for c in [self.mul(z, a), self.mul(a, z)] {
                    if c != z {
                        return Err(MonoidError::NotZero(z, a, c));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A monoid homomorphism from contexts of arity `arity`, given on the
/// generator alphabet, together with an accepting set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognizer {
    pub monoid: FiniteMonoid,
    pub gen_map: Vec<usize>,
    pub accepting: Vec<bool>,
    pub arity: usize,
}

impl Recognizer {
    pub fn new(
        monoid: FiniteMonoid,
        gen_map: Vec<usize>,
        accepting: Vec<bool>,
        arity: usize,
    ) -> Result<Self> {
        let n = monoid.size();
        if accepting.len() != n {
            return Err(MonoidError::Format(format!(
                "accepting flags for {} elements, monoid has {n}",
                accepting.len()
            )));
        }
        if let Some(&g) = gen_map.iter().find(|&&g| g >= n) {
            return Err(MonoidError::BadElement(g, n));
        }
        Ok(Recognizer {
            monoid,
            gen_map,
            accepting,
            arity,
        })
    }

    pub fn check_alphabet(&self, alphabet: &crate::context::GeneratorAlphabet) -> Result<()> {
        if self.arity != alphabet.arity() {
            return Err(MonoidError::ArityMismatch(self.arity, alphabet.arity()));
        }
        if self.gen_map.len() != alphabet.len() {
            return Err(MonoidError::GenMapSize(self.gen_map.len(), alphabet.len()));
        }
        Ok(())
    }

    /// Image of a generator word.
    pub fn eval(&self, word: &[usize]) -> usize {
        self.monoid.product(word.iter().map(|&g| self.gen_map[g]))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.eval(word)]
    }
}

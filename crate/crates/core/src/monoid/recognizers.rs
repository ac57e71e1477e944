use super::{generate, FiniteMonoid, Generated, Recognizer};
use crate::context::{beta, beta_compose, GeneratorAlphabet, ReachabilityType};

/// The monoid generated by the reachability types of the generators, with a
/// formal unit `None` adjoined as element 0.
#[derive(Clone, Debug)]
pub struct BetaMonoid {
    pub generated: Generated<Option<ReachabilityType>>,
    pub monoid: FiniteMonoid,
    pub gen_map: Vec<usize>,
}

impl BetaMonoid {
    pub fn element(&self, i: usize) -> Option<&ReachabilityType> {
        self.generated.elements[i].as_ref()
    }

    pub fn index_of(&self, r: &ReachabilityType) -> Option<usize> {
        self.generated.index_of(&Some(r.clone()))
    }
}

pub(crate) fn beta_mul(
    a: &Option<ReachabilityType>,
    b: &Option<ReachabilityType>,
) -> Option<ReachabilityType> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(beta_compose(x, y).expect("equal arity")),
    }
}

pub fn beta_monoid(alphabet: &GeneratorAlphabet) -> BetaMonoid {
    let gens: Vec<Option<ReachabilityType>> = alphabet
        .generators()
        .iter()
        .map(|g| Some(beta(g)))
        .collect();
    let generated = generate(None, &gens, beta_mul);
    let monoid = generated.to_monoid(beta_mul);
    let gen_map = gens
        .iter()
        .map(|g| generated.index_of(g).expect("generator reached"))
        .collect();
    BetaMonoid {
        generated,
        monoid,
        gen_map,
    }
}

/// The reachability homomorphism as a recognizer; `accept` decides the
/// accepting types. The formal unit is never accepting.
pub fn beta_recognizer(
    alphabet: &GeneratorAlphabet,
    accept: impl Fn(&ReachabilityType) -> bool,
) -> (Recognizer, BetaMonoid) {
    let bm = beta_monoid(alphabet);
    let accepting = bm
        .generated
        .elements
        .iter()
        .map(|t| t.as_ref().is_some_and(&accept))
        .collect();
    let r = Recognizer {
        monoid: bm.monoid.clone(),
        gen_map: bm.gen_map.clone(),
        accepting,
        arity: alphabet.arity(),
    };
    (r, bm)
}

/// Tracks the defined left and right indices and the vertex count modulo `q`;
/// accepts an even count when `q` is even. Each generator with a non-port
/// vertex and full persistent interface generates a cyclic group, so the
/// recognizer is not aperiodic modulo reachability for `q >= 2`.
pub fn vertex_count_recognizer(alphabet: &GeneratorAlphabet, q: usize) -> Recognizer {
    assert!(q >= 1);
    let k = alphabet.arity();
    let sides = 1usize << k;
    let index = |l: usize, r: usize, c: usize| 1 + (l * sides + r) * q + c;
    let size = 1 + sides * sides * q;
    let mut table = vec![vec![0usize; size]; size];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = if x == 0 {
                y
            } else if y == 0 {
                x
            } else {
                let (l1, r1, c1) = decode(x, sides, q);
                let (l2, r2, c2) = decode(y, sides, q);
                let glued = (r1 & l2).count_ones() as usize % q;
                index(l1, r2, (c1 + c2 + q - glued) % q)
            };
        }
    }
    let monoid = FiniteMonoid::from_trusted(0, table, None);
    let gen_map = alphabet
        .generators()
        .iter()
        .map(|g| {
            index(
                g.defined_left() as usize,
                g.defined_right() as usize,
                g.vertex_count() % q,
            )
        })
        .collect();
    let accepting = (0..size)
        .map(|x| x != 0 && q.is_multiple_of(2) && decode(x, sides, q).2.is_multiple_of(2))
        .collect();
    Recognizer {
        monoid,
        gen_map,
        accepting,
        arity: k,
    }
}

fn decode(x: usize, sides: usize, q: usize) -> (usize, usize, usize) {
    let y = x - 1;
    (y / q / sides, y / q % sides, y % q)
}

use super::FiniteMonoid;

/// Green's preorders and classes of a finite monoid.
///
/// `prefix[a][b]` holds when `a` is in `bA`, `suffix[a][b]` when `a` is in
/// `Ab`, `infix[a][b]` when `a` is in `AbA`.
#[derive(Clone, Debug)]
pub struct Green {
    pub prefix: Vec<Vec<bool>>,
    pub suffix: Vec<Vec<bool>>,
    pub infix: Vec<Vec<bool>>,
    /// Classes of mutual infixes, each sorted, ordered by least element.
    pub infix_classes: Vec<Vec<usize>>,
    /// Prefix class intersected with suffix class.
    pub h_classes: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    infix_class_of: Vec<usize>,
    h_class_of: Vec<usize>,
}

impl Green {
    pub fn infix_class_of(&self, a: usize) -> usize {
        self.infix_class_of[a]
    }

    pub fn h_class_of(&self, a: usize) -> usize {
        self.h_class_of[a]
    }

    /// H-classes inside the given infix class.
    pub fn h_classes_in(&self, infix_class: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.infix_classes[infix_class]
            .iter()
            .map(|&a| self.h_class_of[a])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn classes(n: usize, same: impl Fn(usize, usize) -> bool) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut of = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if of[a] != usize::MAX {
            continue;
        }
        let c = out.len();
        let members: Vec<usize> = (a..n)
            .filter(|&b| of[b] == usize::MAX && same(a, b))
            .collect();
        for &b in &members {
            of[b] = c;
        }
        out.push(members);
    }
    (out, of)
}

pub fn green(m: &FiniteMonoid) -> Green {
    let n = m.size();
    let words = n.div_ceil(64);
    let set = |rows: &mut Vec<Vec<u64>>, b: usize, a: usize| rows[b][a / 64] |= 1 << (a % 64);
    // right[b] = bA, left[b] = Ab as bitsets
    let mut right = vec![vec![0u64; words]; n];
    let mut left = vec![vec![0u64; words]; n];
    for b in 0..n {
        for x in 0..n {
            set(&mut right, b, m.mul(b, x));
            set(&mut left, b, m.mul(x, b));
        }
    }
    let mut two_sided = vec![vec![0u64; words]; n];
    for b in 0..n {
        for s in 0..n {
            if left[b][s / 64] >> (s % 64) & 1 == 1 {
                for w in 0..words {
                    two_sided[b][w] |= right[s][w];
                }
            }
        }
    }
    let matrix = |rows: &Vec<Vec<u64>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| rows[b][a / 64] >> (a % 64) & 1 == 1)
                    .collect()
            })
            .collect()
    };
    let prefix = matrix(&right);
    let suffix = matrix(&left);
    let infix = matrix(&two_sided);
    let (infix_classes, infix_class_of) = classes(n, |a, b| infix[a][b] && infix[b][a]);
    let (h_classes, h_class_of) = classes(n, |a, b| {
        prefix[a][b] && prefix[b][a] && suffix[a][b] && suffix[b][a]
    });
    Green {
        idempotents: m.idempotents(),
        prefix,
        suffix,
        infix,
        infix_classes,
        h_classes,
        infix_class_of,
        h_class_of,
    }
}

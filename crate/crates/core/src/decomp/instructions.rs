use std::fmt;

use super::{validate, DecompError, Frame, PathDecomposition, Result};
use crate::mask::{bit, bits};

/// One step of an instruction sequence. The state starts as the set of left
/// ports and must end as the set of right ports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    Add(usize),
    Remove(usize),
}

impl Instr {
    pub fn vertex(self) -> usize {
        match self {
            Instr::Add(v) | Instr::Remove(v) => v,
        }
    }

    pub fn apply(self, state: u64) -> u64 {
        match self {
            Instr::Add(v) => state | bit(v),
            Instr::Remove(v) => state & !bit(v),
        }
    }

    pub fn display<'a>(self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(Instr, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0 {
                    Instr::Add(v) => write!(f, "add({})", self.1[v]),
                    Instr::Remove(v) => write!(f, "remove({})", self.1[v]),
                }
            }
        }
        D(self, names)
    }
}

/// Walks the bags in order, removing before adding, and finally removes
/// everything that is not a right port.
pub fn to_instructions(pd: &PathDecomposition, frame: Frame) -> Result<Vec<Instr>> {
    validate(pd, frame)?;
    let mut state = frame.left;
    let mut out = Vec::new();
    for &bag in &pd.bags {
        out.extend(bits(state & !bag).map(Instr::Remove));
        out.extend(bits(bag & !state).map(Instr::Add));
        state = bag;
    }
    out.extend(bits(state & !frame.right).map(Instr::Remove));
    Ok(out)
}

/// The states before and after every instruction, as bags. Bag `i` is the
/// state after the first `i` instructions.
pub fn from_instructions(seq: &[Instr], frame: Frame) -> Result<PathDecomposition> {
    validate_instructions(seq, frame)?;
    Ok(PathDecomposition::new(states(seq, frame.left)))
}

pub(crate) fn states(seq: &[Instr], start: u64) -> Vec<u64> {
    let mut state = start;
    let mut out = Vec::with_capacity(seq.len() + 1);
    out.push(state);
    for &i in seq {
        state = i.apply(state);
        out.push(state);
    }
    out
}

/// Every vertex that is not a left port is added exactly once, every vertex
/// that is not a right port is removed exactly once, nothing else happens,
/// and the resulting states form a decomposition.
pub fn validate_instructions(seq: &[Instr], frame: Frame) -> Result<()> {
    let n = frame.n();
    let bad = |m: String| Err(DecompError::BadInstructions(m));
    let mut state = frame.left;
    let mut added = 0u64;
    let mut removed = 0u64;
    for &ins in seq {
        let v = ins.vertex();
        if v >= n {
            return bad(format!("vertex #{v} does not exist"));
        }
        let name = &frame.names[v];
        match ins {
            Instr::Add(_) => {
                if frame.left & bit(v) != 0 {
                    return bad(format!("left port `{name}` is added"));
                }
                if (added | removed) & bit(v) != 0 {
                    return bad(format!("`{name}` added twice or after removal"));
                }
                added |= bit(v);
            }
            Instr::Remove(_) => {
                if frame.right & bit(v) != 0 {
                    return bad(format!("right port `{name}` is removed"));
                }
                if state & bit(v) == 0 {
                    return bad(format!("`{name}` removed while absent"));
                }
                removed |= bit(v);
            }
        }
        state = ins.apply(state);
    }
    let all = frame.all();
    if let Some(v) = bits(all & !frame.left & !added).next() {
        return bad(format!("`{}` is never added", frame.names[v]));
    }
    if let Some(v) = bits(all & !frame.right & !removed).next() {
        return bad(format!("`{}` is never removed", frame.names[v]));
    }
    validate(&PathDecomposition::new(states(seq, frame.left)), frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::fixtures::crossing;
    use crate::context::Context;
    use crate::decomp::pathwidth_exact_frame;

    #[test]
    fn roundtrip_on_crossing() {
        let c = crossing();
        let f = Frame::of_context(&c);
        let (_, pd) = pathwidth_exact_frame(f).unwrap();
        let seq = to_instructions(&pd, f).unwrap();
        let back = from_instructions(&seq, f).unwrap();
        assert_eq!(back.normalized(), pd.normalized());
        assert_eq!(back.width(), pd.width());
    }

    #[test]
    fn persistent_ports_have_no_instructions() {
        let c =
            Context::from_names(&["p", "x"], &[("p", "x")], &[Some("p")], &[Some("p")]).unwrap();
        let f = Frame::of_context(&c);
        let (_, pd) = pathwidth_exact_frame(f).unwrap();
        let seq = to_instructions(&pd, f).unwrap();
        assert_eq!(seq, vec![Instr::Add(1), Instr::Remove(1)]);
    }

    #[test]
    fn rejects_bad_sequences() {
        let c = crossing();
        let f = Frame::of_context(&c);
        // removing a before d arrives leaves the edge a-d uncovered
        let seq = [
            Instr::Remove(0),
            Instr::Add(3),
            Instr::Add(2),
            Instr::Remove(1),
        ];
        assert!(validate_instructions(&seq, f).is_err());
        let twice = [Instr::Add(3), Instr::Add(3)];
        assert!(validate_instructions(&twice, f).is_err());
    }
}

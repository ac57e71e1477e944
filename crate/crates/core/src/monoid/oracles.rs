//! Membership oracles on concrete contexts.

use std::fmt;
use std::str::FromStr;

use crate::context::Context;
use crate::mask::{bit, bits, reach_within};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// Some path joins left port 1 to right port 1.
    Reach,
    /// Vertex-disjoint paths join left port `i` to right port `i` for
    /// `i = 1, 2`.
    TwoDisjoint,
}

impl Oracle {
    pub fn holds(self, c: &Context) -> bool {
        match self {
            Oracle::Reach => reach(c),
            Oracle::TwoDisjoint => two_disjoint(c),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Reach => "reach",
            Oracle::TwoDisjoint => "two-disjoint",
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reach" => Ok(Oracle::Reach),
            "two-disjoint" => Ok(Oracle::TwoDisjoint),
            _ => Err(format!(
                "unknown oracle `{s}`, expected reach or two-disjoint"
            )),
        }
    }
}

pub fn reach(c: &Context) -> bool {
    match (c.left(0), c.right(0)) {
        (Some(s), Some(t)) => reach_within(c.adjacency(), c.all_mask(), s) & bit(t) != 0,
        _ => false,
    }
}

/// Exhaustive search: every simple path from left port 1 to right port 1
/// avoiding the second pair, then a reachability check in what remains.
pub fn two_disjoint(c: &Context) -> bool {
    if c.arity() < 2 {
        return false;
    }
    let (Some(s1), Some(t1), Some(s2), Some(t2)) = (c.left(0), c.right(0), c.left(1), c.right(1))
    else {
        return false;
    };
    let avoid = bit(s2) | bit(t2);
    if avoid & (bit(s1) | bit(t1)) != 0 {
        return false;
    }
    let adj = c.adjacency();
    let all = c.all_mask();
    let mut stack = vec![(s1, bit(s1))];
    while let Some((v, path)) = stack.pop() {
        if v == t1 {
            if reach_within(adj, all & !path, s2) & bit(t2) != 0 {
                return true;
            }
            continue;
        }
        for u in bits(adj[v] & !path & !avoid) {
            stack.push((u, path | bit(u)));
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::fixtures::{crossing, hub, power};

    #[test]
    fn crossing_reach_by_parity() {
        for n in 1..=6 {
            assert_eq!(reach(&power(&crossing(), n)), n % 2 == 0, "n = {n}");
        }
    }

    #[test]
    fn hub_pairs() {
        assert!(!two_disjoint(&hub()));
        assert!(two_disjoint(&power(&hub(), 2)));
        assert!(reach(&hub()));
    }

    #[test]
    fn parse() {
        assert_eq!("two-disjoint".parse::<Oracle>(), Ok(Oracle::TwoDisjoint));
        assert!("x".parse::<Oracle>().is_err());
    }
}

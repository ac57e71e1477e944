use super::{MonoidError, Result};
use crate::context::{beta, beta_compose, compose, Context, ReachabilityType};

/// Evidence that a language has a periodic idempotent-reachability element.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub w: Context,
    pub x: Context,
    pub y: Context,
    pub beta: ReachabilityType,
    /// Membership of `x w^m y` for `m = 1..=M`.
    pub sequence: Vec<bool>,
    /// First power from which the sequence alternates.
    pub alternating_from: usize,
}

/// The least `m0` (1-based) from which `seq` alternates to its end, if that
/// leaves at least four alternations.
pub fn eventually_alternating(seq: &[bool]) -> Option<usize> {
    let n = seq.len();
    if n < 5 {
        return None;
    }
    let mut m0 = n;
    while m0 >= 2 && seq[m0 - 2] != seq[m0 - 1] {
        m0 -= 1;
    }
    (m0 + 4 <= n).then_some(m0)
}

/// Evaluates `oracle` on `x w^m y` for `m = 1..=max_power` and returns a
/// certificate when the answers eventually alternate. Fails when `beta(w)`
/// is not idempotent.
pub fn certify_non_star_free(
    oracle: impl Fn(&Context) -> bool,
    w: &Context,
    x: &Context,
    y: &Context,
    max_power: usize,
) -> Result<Option<Certificate>> {
    let b = beta(w);
    if beta_compose(&b, &b)? != b {
        return Err(MonoidError::NotIdempotent);
    }
    let mut acc = x.clone();
    let mut sequence = Vec::with_capacity(max_power);
    for _ in 0..max_power {
        acc = compose(&acc, w)?;
        sequence.push(oracle(&compose(&acc, y)?));
    }
    Ok(eventually_alternating(&sequence).map(|m0| Certificate {
        w: w.clone(),
        x: x.clone(),
        y: y.clone(),
        beta: b,
        sequence,
        alternating_from: m0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::fixtures::{crossing, hub};
    use crate::monoid::oracles::{reach, two_disjoint};

    #[test]
    fn alternation() {
        let (t, f) = (true, false);
        assert_eq!(eventually_alternating(&[f, t, f, t, f, t]), Some(1));
        assert_eq!(eventually_alternating(&[t, t, f, t, f, t]), Some(2));
        assert_eq!(eventually_alternating(&[t, t, t, f, t, f]), None);
        assert_eq!(eventually_alternating(&[t; 8]), None);
    }

    #[test]
    fn hub_certificate() {
        let id = Context::identity(2);
        let c = certify_non_star_free(two_disjoint, &hub(), &id, &id, 8)
            .unwrap()
            .unwrap();
        let expected: Vec<bool> = (1..=8).map(|m| m % 2 == 0).collect();
        assert_eq!(c.sequence, expected);
        assert_eq!(c.alternating_from, 1);
    }

    #[test]
    fn no_certificate() {
        let id = Context::identity(2);
        assert!(certify_non_star_free(reach, &hub(), &id, &id, 8)
            .unwrap()
            .is_none());
        assert!(certify_non_star_free(|_| true, &hub(), &id, &id, 8)
            .unwrap()
            .is_none());
    }

    #[test]
    fn crossing_is_rejected() {
        let id = Context::identity(2);
        assert!(matches!(
            certify_non_star_free(reach, &crossing(), &id, &id, 8),
            Err(MonoidError::NotIdempotent)
        ));
    }
}

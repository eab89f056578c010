//! Coupon-collector quantities for sampling subsets of the solution support.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, Q};

/// Constant `c` in `r = ceil(c (s/d) ln(s/eps))`. With `c = 6` the union
/// bound closes in both regimes: for `d <= s/3` each element is missed per
/// round with probability at most `1 - d/(2s)`, giving `s exp(-3 ln(s/eps))`;
/// for `d >= s/3` at most `5/6`, giving `s (5/6)^{6 ln(s/eps)} < eps`.
pub const ROUNDS_CONSTANT: f64 = 6.0;

fn check(s: usize, d: usize) -> Result<()> {
    if d == 0 || d > s {
        return Err(Error::InvalidArgument(format!("need 1 <= d <= s, got s = {s}, d = {d}")));
    }
    Ok(())
}

/// `|S_d| = sum_{i=1}^{d} C(s, i)`.
pub fn subset_count(s: usize, d: usize) -> BigUint {
    (1..=d.min(s)).map(|i| binomial(s as u64, i as u64)).sum()
}

/// Probability that a fixed element of an `s`-set is in a uniformly random
/// nonempty subset of size at most `d`:
/// `sum_{i=1}^d C(s-1, i-1) / sum_{i=1}^d C(s, i)`.
pub fn see_probability(s: usize, d: usize) -> Result<Q> {
    check(s, d)?;
    let num: BigUint = (1..=d).map(|i| binomial(s as u64 - 1, i as u64 - 1)).sum();
    Ok(Q::new(num.into(), subset_count(s, d).into()))
}

/// `ceil(6 (s/d) ln(s/eps))`, at least 1.
pub fn required_rounds(s: usize, d: usize, eps: f64) -> Result<usize> {
    check(s, d)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps = {eps} not in (0, 1)")));
    }
    let r = ROUNDS_CONSTANT * (s as f64 / d as f64) * (s as f64 / eps).ln();
    Ok((r.ceil() as usize).max(1))
}

/// Exact union-bound evaluations at `r` rounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionBound {
    /// `s (1 - p)^r <= eps` with the exact per-round probability `p`.
    pub direct: bool,
    /// The same with the proof's lower bound on `p`: `d/(2s)` when
    /// `3d <= s + 1`, else `1/6`.
    pub proof_branch: bool,
}

fn tail_at_most(s: usize, miss: &Q, r: usize, eps: &Q) -> bool {
    // s * (a/b)^r <= eps  <=>  s * a^r * eps_den <= eps_num * b^r
    let a = miss.numer().to_biguint().expect("nonnegative");
    let b = miss.denom().to_biguint().expect("positive");
    let en = eps.numer().to_biguint().expect("positive");
    let ed = eps.denom().to_biguint().expect("positive");
    BigUint::from(s) * a.pow(r as u32) * ed <= en * b.pow(r as u32)
}

pub fn union_bound(s: usize, d: usize, r: usize, eps: f64) -> Result<UnionBound> {
    let p = see_probability(s, d)?;
    let eps_q = Q::from_float(eps).ok_or_else(|| Error::InvalidArgument(format!("eps = {eps}")))?;
    let lower = if 3 * d <= s + 1 {
        Q::new((d as u64).into(), (2 * s as u64).into())
    } else {
        Q::new(1.into(), 6.into())
    };
    Ok(UnionBound {
        direct: tail_at_most(s, &(Q::one() - p), r, &eps_q),
        proof_branch: tail_at_most(s, &(Q::one() - lower), r, &eps_q),
    })
}

/// The proof's lower bounds on the per-round probability, checked exactly:
/// `p >= (d/s)(s-2d+1)/(s-d+1) >= d/(2s)` when `3d <= s + 1`, else `p >= 1/6`.
pub fn proof_lower_bounds_hold(s: usize, d: usize) -> Result<bool> {
    let p = see_probability(s, d)?;
    if 3 * d <= s + 1 {
        let (s, d) = (s as i64, d as i64);
        let mid = Q::new(d.into(), s.into()) * Q::new((s - 2 * d + 1).into(), (s - d + 1).into());
        Ok(p >= mid && mid >= Q::new(d.into(), (2 * s).into()))
    } else {
        Ok(p >= Q::new(1.into(), 6.into()))
    }
}

/// `true` iff `see_probability(s, d)` is nondecreasing in `d`.
pub fn monotone_in_d(s: usize) -> Result<bool> {
    let mut prev = Q::zero();
    for d in 1..=s {
        let p = see_probability(s, d)?;
        if p < prev {
            return Ok(false);
        }
        prev = p;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn see_probability_examples() {
        assert_eq!(see_probability(1, 1).unwrap(), q(1));
        for s in 1..10 {
            assert_eq!(see_probability(s, 1).unwrap(), q_frac(1, s as i64));
        }
        assert_eq!(see_probability(3, 3).unwrap(), q_frac(4, 7));
        assert!(see_probability(3, 4).is_err());
        assert!(see_probability(3, 0).is_err());
    }

    #[test]
    fn rounds() {
        assert_eq!(required_rounds(1, 1, 0.1).unwrap(), 14);
        assert!(required_rounds(10, 2, 0.01).unwrap() >= required_rounds(10, 2, 0.1).unwrap());
        assert!(required_rounds(4, 1, 1.0).is_err());
    }

    #[test]
    fn union_bound_small() {
        for s in 1..20 {
            for d in 1..=s {
                let r = required_rounds(s, d, 0.1).unwrap();
                let u = union_bound(s, d, r, 0.1).unwrap();
                assert!(u.direct && u.proof_branch, "s = {s}, d = {d}");
                assert!(proof_lower_bounds_hold(s, d).unwrap());
            }
            assert!(monotone_in_d(s).unwrap());
        }
    }
}

//! Brute-force and Grover-style search counts with the binomial bounds used
//! to compare them against the linear-system lower bounds.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::macaulay::DegreeKind;
use crate::rational::{binomial, Q};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchCosts {
    pub n: usize,
    pub h: usize,
    /// `C(n, h)`.
    pub binom: String,
    /// `sum_{j<=h} C(n, j)`.
    pub cumulative: String,
    /// `3 sqrt(h) C(n, h)`, as a float.
    pub entropy_bound: f64,
    /// Exact check `cumulative <= 3 sqrt(h) C(n, h)` via squares.
    pub entropy_bound_holds: bool,
    /// `C(n,h) (n-h+1) / (n-2h+1)` when `n - 2h + 1 > 0`.
    pub geometric_bound: Option<String>,
    /// Exact check `sum_{1<=j<=h} C(n, j) <= geometric_bound`.
    pub geometric_bound_holds: Option<bool>,
    pub grover: f64,
    pub grover_h: f64,
    pub grover_h_quarter: f64,
    /// `sqrt((d+1)^h - 1)` and `sqrt(C(d+h,h) - 1)` for the supplied degree.
    pub theorem_max: Option<f64>,
    pub theorem_total: Option<f64>,
}

fn sqrt_big(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY).sqrt()
}

/// Exact `sum <= 3 sqrt(h) C` as `sum^2 <= 9 h C^2`.
pub fn entropy_bound_holds(n: usize, h: usize) -> bool {
    let c = binomial(n as u64, h as u64);
    let sum: BigUint = (0..=h).map(|j| binomial(n as u64, j as u64)).sum();
    &sum * &sum <= BigUint::from(9 * h as u64) * &c * &c
}

/// Exact `sum_{1<=j<=h} C(n,j) <= C(n,h) (n-h+1)/(n-2h+1)`; `None` when the
/// denominator is not positive.
pub fn geometric_bound(n: usize, h: usize) -> Option<(Q, bool)> {
    if n + 1 <= 2 * h {
        return None;
    }
    let c = binomial(n as u64, h as u64);
    let bound = Q::new((c * BigUint::from((n - h + 1) as u64)).into(), ((n - 2 * h + 1) as u64).into());
    let sum: BigUint = (1..=h).map(|j| binomial(n as u64, j as u64)).sum();
    let holds = Q::from_integer(sum.into()) <= bound;
    Some((bound, holds))
}

pub fn search_costs(n: usize, h: usize, d: Option<u32>) -> Result<SearchCosts> {
    if h > n {
        return Err(Error::InvalidArgument(format!("h = {h} > n = {n}")));
    }
    let c = binomial(n as u64, h as u64);
    let cumulative: BigUint = (0..=h).map(|j| binomial(n as u64, j as u64)).sum();
    let sc = sqrt_big(&c);
    let hf = h as f64;
    let grover = if h == 0 { 0.0 } else { sc };
    let geo = geometric_bound(n, h);
    let theorem = |kind: DegreeKind| {
        let v = crate::condition::norm_sq_closed_form(kind, h);
        if v.is_zero() {
            0.0
        } else {
            sqrt_big(&v)
        }
    };
    Ok(SearchCosts {
        n,
        h,
        binom: c.to_string(),
        cumulative: cumulative.to_string(),
        entropy_bound: 3.0 * hf.sqrt() * c.to_f64().unwrap_or(f64::INFINITY),
        entropy_bound_holds: h == 0 || entropy_bound_holds(n, h),
        geometric_bound: geo.as_ref().map(|(b, _)| b.to_string()),
        geometric_bound_holds: geo.map(|(_, ok)| ok),
        grover,
        grover_h: hf * grover,
        grover_h_quarter: hf.powf(0.25) * grover,
        theorem_max: d.map(|d| theorem(DegreeKind::Max(d))),
        theorem_total: d.map(|d| theorem(DegreeKind::Total(d))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n10_h3() {
        let c = search_costs(10, 3, Some(30)).unwrap();
        assert_eq!(c.binom, "120");
        assert_eq!(c.cumulative, "176");
        assert!(c.entropy_bound_holds);
        assert!((c.entropy_bound - 623.538).abs() < 1e-3);
        assert_eq!(c.geometric_bound.as_deref(), Some("192"));
        assert_eq!(c.geometric_bound_holds, Some(true));
        assert!((c.theorem_max.unwrap() - (31f64.powi(3) - 1.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn weight_zero() {
        let c = search_costs(7, 0, None).unwrap();
        assert_eq!(c.binom, "1");
        assert_eq!(c.cumulative, "1");
        assert_eq!(c.grover, 0.0);
        assert!(c.theorem_max.is_none());
    }

    #[test]
    fn geometric_undefined_branch() {
        assert!(geometric_bound(4, 3).is_none());
        assert!(search_costs(4, 3, None).unwrap().geometric_bound.is_none());
        assert!(search_costs(3, 4, None).is_err());
    }
}

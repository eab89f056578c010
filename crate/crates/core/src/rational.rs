//! Exact arithmetic helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for every coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_from_biguint(n: &BigUint) -> Q {
    Q::from_integer(BigInt::from(n.clone()))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: u64, k: u64) -> Q {
    q_from_biguint(&binomial(n, k))
}

pub fn pow_q(base: u64, exp: u32) -> Q {
    q_from_biguint(&BigUint::from(base).pow(exp))
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales `values` by their common denominator and returns integer numerators.
pub fn integerize(values: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = common_denominator(values.iter());
    let ints = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (ints, den)
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm_sq(a: &[Q]) -> Q {
    dot(a, a)
}

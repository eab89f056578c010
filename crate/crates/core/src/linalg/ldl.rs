//! Positive-definiteness certificates for symmetric rational matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Q};

/// Outcome of an LDL^T attempt without pivoting.
#[derive(Clone, Debug, PartialEq)]
pub struct LdlCertificate {
    /// Diagonal of `D`, as far as it was computed.
    pub pivots: Vec<Q>,
    pub positive_definite: bool,
}

impl LdlCertificate {
    /// Index of the first non-positive pivot.
    pub fn failed_at(&self) -> Option<usize> {
        self.pivots.iter().position(|p| !p.is_positive())
    }
}

/// Fraction-free LDL^T (Bareiss) of a symmetric rational matrix.
///
/// The matrix is scaled to integers by the common denominator `L`; Bareiss
/// elimination then yields the leading principal minors `D_k` of the scaled
/// matrix exactly, and the LDL^T pivots of the input are
/// `D_k / (D_{k-1} L)`. Stops at the first non-positive pivot.
pub fn ldl_certify(a: &[Vec<Q>]) -> LdlCertificate {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "square matrix expected");
    let scale = common_denominator(a.iter().flatten());
    let scale_q = Q::from_integer(scale.clone());
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|v| v.numer() * (&scale / v.denom())).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let dk = m[k][k].clone();
        pivots.push(Q::new(dk.clone(), prev.clone()) / &scale_q);
        if !dk.is_positive() {
            return LdlCertificate {
                pivots,
                positive_definite: false,
            };
        }
        // Only the lower triangle is needed: the trailing block stays symmetric.
        for i in k + 1..n {
            for j in k + 1..=i {
                let v = (&dk * &m[i][j] - &m[i][k] * &m[j][k]) / &prev;
                m[i][j] = v;
            }
        }
        for i in k + 1..n {
            for j in k + 1..i {
                m[j][i] = m[i][j].clone();
            }
        }
        prev = dk;
    }
    LdlCertificate {
        pivots,
        positive_definite: true,
    }
}

/// Plain rational LDL^T without pivoting; returns the pivots, stopping after
/// the first non-positive one.
pub fn ldl_rational(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = m[k][k].clone();
        pivots.push(p.clone());
        if !p.is_positive() {
            break;
        }
        for i in k + 1..n {
            let l = &m[i][k] / &p;
            if l.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = &l * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    pivots
}

//! Shortest vector in the affine hull of a finite family.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::exact::{solve, sparse_rows};
use crate::rational::{dot, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct AffineShortest {
    /// Squared norm of the shortest point of the affine hull.
    pub gamma_star: Q,
    /// Affine weights (summing to 1) of that point; `None` when the origin
    /// lies in the hull.
    pub weights: Option<Vec<Q>>,
}

impl AffineShortest {
    pub fn origin_in_hull(&self) -> bool {
        self.weights.is_none()
    }
}

/// Gram matrix `V^T V` of the family (vectors are the columns of `V`).
pub fn gram(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let t = vectors.len();
    let mut g = vec![vec![Q::zero(); t]; t];
    for i in 0..t {
        for j in i..t {
            let v = dot(&vectors[i], &vectors[j]);
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    g
}

/// `gamma* = 1 / <1, G^+ 1>` with weights `G^+ 1 / <1, G^+ 1>`, or 0 when
/// `1` is outside the column space of `G` (the origin is in the hull).
pub fn shortest_affine_norm(vectors: &[Vec<Q>]) -> Result<AffineShortest> {
    if vectors.is_empty() {
        return Err(Error::InvalidArgument("empty vector family".into()));
    }
    let dim = vectors[0].len();
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let t = vectors.len();
    let g = gram(vectors);
    let ones = vec![Q::one(); t];
    Ok(match solve(&sparse_rows(&g), &ones, t).min_norm() {
        None => AffineShortest {
            gamma_star: Q::zero(),
            weights: None,
        },
        Some(x) => {
            let s: Q = x.iter().sum();
            AffineShortest {
                gamma_star: Q::one() / &s,
                weights: Some(x.iter().map(|v| v / &s).collect()),
            }
        }
    })
}

/// `V w`.
pub fn combination(vectors: &[Vec<Q>], weights: &[Q]) -> Vec<Q> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); dim];
    for (v, w) in vectors.iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += w * x;
            }
        }
    }
    out
}

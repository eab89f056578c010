//! Condition numbers of materialized Macaulay systems.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::svd::{norm2, svd};
use crate::macaulay::MacaulaySystem;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemConditioning {
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub rank: usize,
    pub kappa: f64,
    pub kappa_b: f64,
    pub b_norm: f64,
    /// `||M^+ b||`.
    pub pinv_b_norm: f64,
    #[serde(skip)]
    pub pinv_b: Vec<f64>,
}

/// `kappa(M)` and `kappa_b(M, b)` from one SVD of the dense matrix.
pub fn condition_numbers(ms: &MacaulaySystem) -> Result<SystemConditioning> {
    let a = ms.matrix.to_dense();
    if a.rows == 0 || a.cols == 0 || a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let b = ms.b_f64();
    let b_norm = norm2(&b);
    if b_norm == 0.0 {
        return Err(Error::InvalidArgument("right-hand side is zero".into()));
    }
    let d = svd(&a);
    let x = d.pinv_apply(&b);
    let pinv_b_norm = norm2(&x);
    let (smax, smin) = (d.sigma_max(), d.sigma_min_nonzero());
    Ok(SystemConditioning {
        sigma_max: smax,
        sigma_min: smin,
        rank: d.rank(),
        kappa: smax / smin,
        kappa_b: smax * pinv_b_norm / b_norm,
        b_norm,
        pinv_b_norm,
        pinv_b: x,
    })
}

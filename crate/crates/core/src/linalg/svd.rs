//! Dense thin SVD: Householder QR with column pivoting to a square
//! triangle, then one-sided Jacobi on the columns of its transpose.

use crate::error::{Error, Result};

/// Column-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Dense::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Dense {
        let mut t = Dense::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        for (j, xj) in x.iter().enumerate() {
            if *xj != 0.0 {
                for (yi, a) in y.iter_mut().zip(self.col(j)) {
                    *yi += a * xj;
                }
            }
        }
        y
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0.0)
    }
}

/// Thin SVD `A = U diag(s) V^T` with `r = min(rows, cols)` singular triplets,
/// sorted by decreasing singular value.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Dense,
    pub s: Vec<f64>,
    pub v: Dense,
}

fn norm(x: &[f64]) -> f64 {
    // Scaled to avoid overflow on large entries.
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Householder QR of a tall matrix: returns the reflectors (stored in the
/// lower part of the returned matrix plus their scalars) and R.
struct Qr {
    h: Dense,
    tau: Vec<f64>,
    perm: Vec<usize>,
}

impl Qr {
    /// QR with column pivoting: column `perm[k]` of the input becomes column
    /// `k` of `Q R`.
    fn new(mut a: Dense) -> Qr {
        let (m, n) = (a.rows, a.cols);
        let mut tau = vec![0.0; n];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rest: Vec<f64> = (0..n).map(|j| dot(a.col(j), a.col(j))).collect();
        for k in 0..n.min(m) {
            let p = (k..n).max_by(|&x, &y| rest[x].total_cmp(&rest[y])).expect("k < n");
            if p != k {
                let (lo, hi) = a.data.split_at_mut(p * m);
                lo[k * m..(k + 1) * m].swap_with_slice(&mut hi[..m]);
                perm.swap(k, p);
                rest.swap(k, p);
            }
            let x = &a.data[k * m + k..(k + 1) * m];
            let alpha = norm(x);
            if alpha == 0.0 {
                continue;
            }
            let x0 = x[0];
            let beta = if x0 >= 0.0 { -alpha } else { alpha };
            // v = x - beta e1, normalized so v[0] = 1.
            let v0 = x0 - beta;
            for i in k + 1..m {
                let idx = k * m + i;
                a.data[idx] /= v0;
            }
            tau[k] = (beta - x0) / beta;
            a.data[k * m + k] = beta;
            let (head, tail) = a.data.split_at_mut((k + 1) * m);
            let v = &head[k * m + k + 1..(k + 1) * m];
            for col in tail.chunks_exact_mut(m) {
                let c = &mut col[k..];
                let s = tau[k] * (c[0] + dot(v, &c[1..]));
                if s != 0.0 {
                    c[0] -= s;
                    for (ci, vi) in c[1..].iter_mut().zip(v) {
                        *ci -= s * vi;
                    }
                }
            }
            for j in k + 1..n {
                let c = &a.data[j * m + k + 1..(j + 1) * m];
                rest[j] = dot(c, c);
            }
        }
        Qr { h: a, tau, perm }
    }

    fn r(&self) -> Dense {
        let n = self.h.cols;
        let mut r = Dense::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                r.set(i, j, self.h.get(i, j));
            }
        }
        r
    }

    /// `Q [x; 0]` for `x` of length `cols`.
    fn apply_q(&self, x: &[f64]) -> Vec<f64> {
        let m = self.h.rows;
        let mut y = vec![0.0; m];
        y[..x.len()].copy_from_slice(x);
        for k in (0..self.h.cols).rev() {
            if self.tau[k] == 0.0 {
                continue;
            }
            let v = &self.h.col(k)[k + 1..];
            let s = self.tau[k] * (y[k] + dot(v, &y[k + 1..]));
            y[k] -= s;
            for (yi, vi) in y[k + 1..].iter_mut().zip(v) {
                *yi -= s * vi;
            }
        }
        y
    }
}

/// One-sided Jacobi: orthogonalizes the columns of `w = A V` in place and
/// accumulates `V`. Squared column norms are cached and refreshed every
/// sweep.
fn jacobi(w: &mut Dense) -> Dense {
    let (m, n) = (w.rows, w.cols);
    let mut v = Dense::zeros(n, n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let tol = (m as f64).sqrt() * f64::EPSILON;
    for _sweep in 0..80 {
        let mut sq: Vec<f64> = (0..n).map(|j| dot(w.col(j), w.col(j))).collect();
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta) = (sq[p], sq[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(w.col(p), w.col(q));
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w.data, m, p, q, c, s);
                rotate(&mut v.data, n, p, q, c, s);
                sq[p] = (alpha - t * gamma).max(0.0);
                sq[q] = beta + t * gamma;
            }
        }
        if !rotated {
            break;
        }
    }
    v
}

fn rotate(data: &mut [f64], m: usize, p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = data.split_at_mut(q * m);
    let cp = &mut lo[p * m..(p + 1) * m];
    let cq = &mut hi[..m];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

fn sorted_columns(w: &Dense) -> Vec<(f64, usize)> {
    let mut order: Vec<(f64, usize)> = (0..w.cols).map(|j| (norm(w.col(j)), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    order
}

/// Tall case. With `A P = Q R` (pivoted), Jacobi on `R^T` gives
/// `R^T X = Y S`, hence `A = (Q X) S (P Y)^T`. Jacobi on the transposed
/// pivoted triangle converges in few sweeps.
fn svd_tall(a: &Dense) -> Svd {
    let (m, n) = (a.rows, a.cols);
    let qr = Qr::new(a.clone());
    let mut w = qr.r().transpose();
    let x = jacobi(&mut w);
    let order = sorted_columns(&w);
    let mut u = Dense::zeros(m, n);
    let mut vs = Dense::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (k, &(sigma, j)) in order.iter().enumerate() {
        s.push(sigma);
        u.data[k * m..(k + 1) * m].copy_from_slice(&qr.apply_q(x.col(j)));
        if sigma > 0.0 {
            for (i, y) in w.col(j).iter().enumerate() {
                vs.set(qr.perm[i], k, y / sigma);
            }
        }
    }
    Svd { u, s, v: vs }
}

/// Thin SVD of any nonempty matrix.
pub fn svd(a: &Dense) -> Svd {
    if a.rows >= a.cols {
        svd_tall(a)
    } else {
        let t = svd_tall(&a.transpose());
        Svd { u: t.v, s: t.s, v: t.u }
    }
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.s.first().copied().unwrap_or(0.0)
    }

    /// Rank threshold `max(dims) * sigma_max * 2^-40`.
    pub fn tolerance(&self) -> f64 {
        let dims = self.u.rows.max(self.v.rows) as f64;
        dims * self.sigma_max() * 2f64.powi(-40)
    }

    pub fn rank(&self) -> usize {
        let tol = self.tolerance();
        self.s.iter().filter(|s| **s > tol).count()
    }

    /// Smallest singular value above the rank threshold.
    pub fn sigma_min_nonzero(&self) -> f64 {
        let r = self.rank();
        if r == 0 {
            0.0
        } else {
            self.s[r - 1]
        }
    }

    /// `A^+ b` through the truncated SVD.
    pub fn pinv_apply(&self, b: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.v.rows];
        for k in 0..self.rank() {
            let c = dot(self.u.col(k), b) / self.s[k];
            for (xi, vi) in x.iter_mut().zip(self.v.col(k)) {
                *xi += c * vi;
            }
        }
        x
    }
}

/// Condition numbers read from one SVD.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conditioning {
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub rank: usize,
    pub kappa: f64,
}

/// `kappa = sigma_max / sigma_min` over the nonzero singular values.
pub fn kappa(a: &Dense) -> Result<Conditioning> {
    if a.is_zero() || a.rows == 0 || a.cols == 0 {
        return Err(Error::ZeroMatrix);
    }
    let d = svd(a);
    let (smax, smin) = (d.sigma_max(), d.sigma_min_nonzero());
    Ok(Conditioning {
        sigma_max: smax,
        sigma_min: smin,
        rank: d.rank(),
        kappa: smax / smin,
    })
}

/// `kappa_b = ||A|| ||A^+ b|| / ||b||`, with `A^+ b` as a by-product.
pub fn kappa_b(a: &Dense, b: &[f64]) -> Result<(f64, Vec<f64>)> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    if a.is_zero() || a.rows == 0 || a.cols == 0 {
        return Err(Error::ZeroMatrix);
    }
    let bn = norm(b);
    if bn == 0.0 {
        return Err(Error::InvalidArgument("right-hand side is zero".into()));
    }
    let d = svd(a);
    let x = d.pinv_apply(b);
    Ok((d.sigma_max() * norm(&x) / bn, x))
}

pub fn norm2(x: &[f64]) -> f64 {
    norm(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(d: &Svd) -> Dense {
        let (m, n) = (d.u.rows, d.v.rows);
        let mut a = Dense::zeros(m, n);
        for k in 0..d.s.len() {
            for i in 0..m {
                for j in 0..n {
                    let v = a.get(i, j) + d.u.get(i, k) * d.s[k] * d.v.get(j, k);
                    a.set(i, j, v);
                }
            }
        }
        a
    }

    fn close(a: &Dense, b: &Dense, tol: f64) -> bool {
        a.data.iter().zip(&b.data).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn identity_and_diagonal() {
        let i2 = Dense::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let c = kappa(&i2).unwrap();
        assert!((c.kappa - 1.0).abs() < 1e-15);
        let (kb, _) = kappa_b(&i2, &[1.0, 0.0]).unwrap();
        assert!((kb - 1.0).abs() < 1e-15);

        let d = Dense::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.5]]);
        assert!((kappa(&d).unwrap().kappa - 2.0).abs() < 1e-14);
        let (kb, x) = kappa_b(&d, &[0.0, 1.0]).unwrap();
        assert!((kb - 2.0).abs() < 1e-14);
        assert!((x[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn tall_wide_and_rank_deficient() {
        let a = Dense::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
            vec![1.0, 0.0, 1.0],
        ]);
        for m in [a.clone(), a.transpose()] {
            let d = svd(&m);
            assert!(close(&reconstruct(&d), &m, 1e-12));
            assert_eq!(d.rank(), 3);
        }
        let r1 = Dense::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
        let d = svd(&r1);
        assert_eq!(d.rank(), 1);
        assert!((d.sigma_max() - 12f64.sqrt()).abs() < 1e-12);
        let x = d.pinv_apply(&[1.0, 3.0, 0.0]);
        // A^+ b for this rank-one matrix: (A^T b) / ||A||_F^2 = (4, 4) / 12.
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-12 && (x[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_rejected() {
        assert!(matches!(kappa(&Dense::zeros(2, 2)), Err(Error::ZeroMatrix)));
        let a = Dense::from_rows(&[vec![1.0]]);
        assert!(matches!(kappa_b(&a, &[1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
    }
}

//! Symmetrized Gram matrices, their minor bounds, and exact PD certificates.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::{solve, sparse_rows};
use crate::linalg::{ldl_certify, Solution};
use crate::macaulay::DegreeKind;
use crate::rational::{binomial_q, pow_q, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct GramSpec {
    pub n: usize,
    pub kind: DegreeKind,
    /// `entries[i-1][j-1] = G_ij`.
    pub entries: Vec<Vec<Q>>,
}

/// Number of monomials of the column set whose support is a fixed `s`-set:
/// `d^s` (max degree) or `C(d, s)` (total degree).
pub fn support_class_size(kind: DegreeKind, s: usize) -> Q {
    match kind {
        DegreeKind::Max(d) => pow_q(d as u64, s as u32),
        DegreeKind::Total(d) => binomial_q(d as u64, s as u64),
    }
}

/// `G_ij = sum_s c_s C(i,s) C(j,s) / C(n,s)` for `i, j` in `1..=n`: the Gram
/// matrix of the averages of `y^(a)` over all weight-`i` assignments.
pub fn gram_symmetrized(n: usize, kind: DegreeKind) -> Result<GramSpec> {
    if n == 0 || kind.d() == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and d >= 1".into()));
    }
    let c: Vec<Q> = (0..=n).map(|s| support_class_size(kind, s) / binomial_q(n as u64, s as u64)).collect();
    let mut entries = vec![vec![Q::zero(); n]; n];
    for i in 1..=n {
        for j in i..=n {
            let v: Q = (1..=i)
                .map(|s| &c[s] * binomial_q(i as u64, s as u64) * binomial_q(j as u64, s as u64))
                .sum();
            entries[j - 1][i - 1] = v.clone();
            entries[i - 1][j - 1] = v;
        }
    }
    Ok(GramSpec { n, kind, entries })
}

impl GramSpec {
    /// Bottom-right `(n-h+1) x (n-h+1)` minor.
    pub fn minor(&self, h: usize) -> Vec<Vec<Q>> {
        self.entries[h - 1..].iter().map(|r| r[h - 1..].to_vec()).collect()
    }

    fn check_h(&self, h: usize) -> Result<()> {
        if h == 0 || h > self.n {
            return Err(Error::InvalidArgument(format!("h = {h} not in 1..={}", self.n)));
        }
        Ok(())
    }
}

/// `1 / <1, (G^(h))^{-1} 1>`: the largest `gamma` with `G^(h) - gamma 11^T`
/// positive semidefinite.
pub fn gram_minor_bound(g: &GramSpec, h: usize) -> Result<Q> {
    g.check_h(h)?;
    let m = g.minor(h);
    let k = m.len();
    match solve(&sparse_rows(&m), &vec![Q::one(); k], k) {
        Solution::Unique(x) => Ok(Q::one() / x.iter().sum::<Q>()),
        _ => Err(Error::SingularMinor { h }),
    }
}

/// The diagonal entry `G_hh` computed by counting pairs of weight-`h`
/// assignments by intersection size (max degree only):
/// `sum_i ((d+1)^{h-i} - 1) C(h,i) C(n-h,i) / C(n,h)`.
pub fn gram_diagonal_by_pairs(n: usize, d: u32, h: usize) -> Q {
    let total: Q = (0..=h)
        .map(|i| {
            (pow_q(d as u64 + 1, (h - i) as u32) - Q::one())
                * binomial_q(h as u64, i as u64)
                * binomial_q((n - h) as u64, i as u64)
        })
        .sum();
    total / binomial_q(n as u64, h as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GammaRule {
    /// `h^h / 2`.
    HPowHHalf,
    /// A fixed value for every `h`.
    Constant(String),
}

impl GammaRule {
    pub fn gamma(&self, h: usize) -> Q {
        match self {
            GammaRule::HPowHHalf => pow_q(h as u64, h as u32) / Q::from_integer(2.into()),
            GammaRule::Constant(s) => s.parse().expect("validated at construction"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "h^h/2" {
            return Ok(GammaRule::HPowHHalf);
        }
        s.parse::<Q>()
            .map(|_| GammaRule::Constant(s.to_string()))
            .map_err(|_| Error::InvalidArgument(format!("unknown gamma rule {s:?} (use h^h/2 or a rational)")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PdVerdict {
    pub h: usize,
    #[serde(serialize_with = "ser_q")]
    pub gamma: Q,
    pub certified: bool,
    #[serde(serialize_with = "ser_qs")]
    pub pivots: Vec<Q>,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_qs<S: serde::Serializer>(q: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(|v| v.to_string()))
}

/// Certifies `G^(h) - gamma(h) 11^T` positive definite for every `h` in
/// `1..=n` by exact LDL^T, with `G` the max-degree Gram matrix at `d = 3n`.
pub fn certify_pd_bound(n: usize, rule: &GammaRule) -> Result<Vec<PdVerdict>> {
    let g = gram_symmetrized(n, DegreeKind::Max(3 * n as u32))?;
    Ok(certify_with(&g, |h| rule.gamma(h)))
}

/// Per-`h` certification for an arbitrary Gram matrix and `gamma` rule.
pub fn certify_with(g: &GramSpec, gamma: impl Fn(usize) -> Q + Sync) -> Vec<PdVerdict> {
    (1..=g.n)
        .into_par_iter()
        .map(|h| {
            let gm = gamma(h);
            let m: Vec<Vec<Q>> = g.minor(h).into_iter().map(|r| r.into_iter().map(|v| v - &gm).collect()).collect();
            let cert = ldl_certify(&m);
            PdVerdict {
                h,
                gamma: gm,
                certified: cert.positive_definite,
                pivots: cert.pivots,
            }
        })
        .collect()
}

/// The single-matrix form: `2G - [min(i,j)^min(i,j)]` positive definite.
/// Restricted to indices `>= h` the subtracted matrix is `h^h 11^T` plus a
/// positive semidefinite sum of nested blocks, so this one certificate
/// implies every per-`h` bound `G^(h) - (h^h/2) 11^T > 0`.
pub fn certify_combined(n: usize) -> Result<bool> {
    let g = gram_symmetrized(n, DegreeKind::Max(3 * n as u32))?;
    let two = Q::from_integer(2.into());
    let m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = i.min(j) + 1;
                    &two * &g.entries[i][j] - pow_q(k as u64, k as u32)
                })
                .collect()
        })
        .collect();
    Ok(ldl_certify(&m).positive_definite)
}

//! Test-side oracles written independently of the library's algorithms.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use boolmac::polysys::{Field, PolySystem};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Pascal's triangle row by row.
pub fn pascal(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigUint::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

pub fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Evaluates every polynomial at the 0/1 point `mask` from its term list;
/// F2 systems are reduced mod 2.
pub fn satisfies(sys: &PolySystem, mask: u64) -> bool {
    sys.polys().iter().all(|p| {
        let mut v = Q::zero();
        for (m, c) in p.terms() {
            let on = m.exps().iter().enumerate().all(|(i, e)| *e == 0 || (mask >> i) & 1 == 1);
            if on {
                v += c;
            }
        }
        match sys.field() {
            Field::C => v.is_zero(),
            Field::F2 => v.is_integer() && (v.to_integer() % BigInt::from(2)).is_zero(),
        }
    })
}

pub fn all_solutions(sys: &PolySystem) -> Vec<u64> {
    (0..1u64 << sys.num_vars()).filter(|m| satisfies(sys, *m)).collect()
}

/// Gauss-Jordan on `[A | b]`; returns one solution (free variables 0) or
/// `None` when inconsistent.
pub fn gauss_solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, c) in pivots.iter().enumerate() {
        x[*c] = m[i][cols].clone();
    }
    Some(x)
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Positive definiteness by symmetric Gaussian elimination: all pivots
/// positive.
pub fn is_positive_definite(a: &[Vec<Q>]) -> bool {
    let n = a.len();
    let mut m = a.to_vec();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    true
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimum-norm point of the affine hull of `vs`, from the KKT system
/// `[G 1; 1^T 0] [w; mu] = [0; 1]`.
pub fn affine_min_point(vs: &[Vec<Q>]) -> Vec<Q> {
    let t = vs.len();
    let mut a = vec![vec![Q::zero(); t + 1]; t + 1];
    for i in 0..t {
        for j in 0..t {
            a[i][j] = dot(&vs[i], &vs[j]);
        }
        a[i][t] = Q::one();
        a[t][i] = Q::one();
    }
    let mut b = vec![Q::zero(); t + 1];
    b[t] = Q::one();
    let w = gauss_solve(&a, &b).expect("KKT system is consistent");
    let dim = vs[0].len();
    (0..dim).map(|k| (0..t).map(|i| &w[i] * &vs[i][k]).sum()).collect()
}

/// `n`-variable exponent vectors with every entry at most `d`, in any order.
pub fn box_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    loop {
        let mut e = out.last().unwrap().clone();
        let mut i = 0;
        while i < n && e[i] == d {
            e[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        e[i] += 1;
        out.push(e);
    }
}

/// Value of `p` at the 0/1 point `mask`, summed term by term over Q.
pub fn eval_at(p: &boolmac::polysys::Polynomial, mask: u64) -> Q {
    p.terms()
        .filter(|(m, _)| m.exps().iter().enumerate().all(|(i, e)| *e == 0 || (mask >> i) & 1 == 1))
        .map(|(_, c)| c.clone())
        .sum()
}

//! Linear solves modulo the prime `2^61 - 1`, with rational reconstruction
//! and exact verification.
//!
//! Used as a fast path: a full column rank modulo `p` implies full column
//! rank over Q, and a reconstructed candidate is accepted only after an exact
//! check of `A x = b`. Anything inconclusive falls back to [`super::solve`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::exact::{mat_vec, solve, QRow, Solution};
use crate::rational::Q;

pub const P: u64 = (1 << 61) - 1;

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

#[inline]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("reduced")
}

/// `x mod p`, or `None` when the denominator vanishes modulo `p`.
pub fn to_modp(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(x.numer()), inv(d)))
}

/// The rational `n/d` with `|n|, d <= sqrt(p/2)` congruent to `u`, if any.
pub fn rational_reconstruct(u: u64) -> Option<Q> {
    let bound = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Q::new(BigInt::from(n), BigInt::from(d)))
}

/// Incremental reduced row echelon form modulo `p` on dense rows.
#[derive(Clone, Debug)]
pub struct ModpRref {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_of_col: Vec<Option<usize>>,
    pivot_cols: Vec<usize>,
}

impl ModpRref {
    pub fn new(cols: usize) -> Self {
        ModpRref {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
            pivot_cols: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, sparse: &[(usize, u64)]) -> bool {
        let mut row = vec![0u64; self.cols];
        for &(c, v) in sparse {
            row[c] = v;
        }
        // Basis rows vanish on each other's pivot columns, so one pass suffices.
        for &c in &self.pivot_cols {
            let f = row[c];
            if f != 0 {
                let b = &self.rows[self.pivot_of_col[c].expect("pivot")];
                for (x, y) in row.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = sub(*x, mul(f, *y));
                    }
                }
            }
        }
        let Some(lead) = row.iter().position(|v| *v != 0) else {
            return false;
        };
        let s = inv(row[lead]);
        for x in row.iter_mut() {
            if *x != 0 {
                *x = mul(*x, s);
            }
        }
        for other in self.rows.iter_mut() {
            let f = other[lead];
            if f != 0 {
                for (x, y) in other.iter_mut().zip(&row) {
                    if *y != 0 {
                        *x = sub(*x, mul(f, *y));
                    }
                }
            }
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.pivot_cols.push(lead);
        self.rows.push(row);
        true
    }

    fn pivot_value(&self, col: usize, value_col: usize) -> Option<u64> {
        self.pivot_of_col[col].map(|p| self.rows[p][value_col])
    }
}

/// How the modular attempt ended.
#[derive(Clone, Debug, PartialEq)]
pub enum ModpOutcome {
    /// Certified exactly.
    Certified(Solution),
    /// Inconclusive; the exact solver must decide.
    Inconclusive,
}

/// Modular attempt at `A x = b`; certifies an inconsistent system or a
/// unique solution when `A` has full column rank modulo `p`.
pub fn solve_modp(rows: &[QRow], rhs: &[Q], cols: usize) -> ModpOutcome {
    let mut e = ModpRref::new(cols + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut s = Vec::with_capacity(r.len() + 1);
        for (c, v) in r {
            match to_modp(v) {
                Some(x) => s.push((*c, x)),
                None => return ModpOutcome::Inconclusive,
            }
        }
        if !b.is_zero() {
            match to_modp(b) {
                Some(x) => s.push((cols, x)),
                None => return ModpOutcome::Inconclusive,
            }
        }
        e.insert(&s);
    }
    let full = (0..cols).all(|c| e.pivot_of_col[c].is_some());
    if !full {
        return ModpOutcome::Inconclusive;
    }
    if e.pivot_of_col[cols].is_some() {
        return ModpOutcome::Certified(Solution::Inconsistent);
    }
    let mut x = Vec::with_capacity(cols);
    for c in 0..cols {
        match rational_reconstruct(e.pivot_value(c, cols).expect("full rank")) {
            Some(v) => x.push(v),
            None => return ModpOutcome::Inconclusive,
        }
    }
    if mat_vec(rows, &x) == rhs {
        ModpOutcome::Certified(Solution::Unique(x))
    } else {
        ModpOutcome::Inconclusive
    }
}

/// [`solve`] with the modular fast path.
pub fn solve_fast(rows: &[QRow], rhs: &[Q], cols: usize) -> Solution {
    match solve_modp(rows, rhs, cols) {
        ModpOutcome::Certified(s) => s,
        ModpOutcome::Inconclusive => solve(rows, rhs, cols),
    }
}

/// Rank modulo `p`; a lower bound on the rank over Q.
pub fn rank_modp(rows: &[QRow], cols: usize) -> Option<usize> {
    let mut e = ModpRref::new(cols);
    for r in rows {
        let s: Option<Vec<(usize, u64)>> = r.iter().map(|(c, v)| to_modp(v).map(|x| (*c, x))).collect();
        e.insert(&s?);
    }
    Some(e.rank())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::exact::sparse_rows;
    use crate::rational::{q, q_frac};

    fn dense(rows: &[&[i64]]) -> Vec<QRow> {
        sparse_rows(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn reconstruct_small_fractions() {
        for (n, d) in [(1, 2), (-3, 7), (0, 1), (12345, 678), (-1, 1)] {
            let x = q_frac(n, d);
            assert_eq!(rational_reconstruct(to_modp(&x).unwrap()), Some(x));
        }
    }

    #[test]
    fn certified_unique_and_inconsistent() {
        let a = dense(&[&[2, 1], &[1, 3], &[1, 1]]);
        let rhs = vec![q(3), q(5), q_frac(11, 5)];
        assert_eq!(
            solve_modp(&a, &rhs, 2),
            ModpOutcome::Certified(Solution::Unique(vec![q_frac(4, 5), q_frac(7, 5)]))
        );
        let rhs_bad = vec![q(3), q(5), q(0)];
        assert_eq!(solve_modp(&a, &rhs_bad, 2), ModpOutcome::Certified(Solution::Inconsistent));
    }

    #[test]
    fn rank_deficient_is_inconclusive() {
        let a = dense(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_modp(&a, &[q(1), q(2)], 2), ModpOutcome::Inconclusive);
        assert_eq!(solve_fast(&a, &[q(1), q(2)], 2), solve(&a, &[q(1), q(2)], 2));
        assert_eq!(rank_modp(&a, 2), Some(1));
    }
}

//! Exact sparse row echelon over the integers (fraction free, rows kept
//! primitive) with rational back substitution.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, dot, Q};

/// Sparse integer row, strictly increasing column indices, no zeros.
pub type IntRow = Vec<(usize, BigInt)>;
/// Sparse rational row, strictly increasing column indices, no zeros.
pub type QRow = Vec<(usize, Q)>;

/// Clears denominators of a sparse rational row.
pub fn integer_row(row: &[(usize, Q)]) -> IntRow {
    let den = common_denominator(row.iter().map(|(_, v)| v));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&den / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides out the content and makes the leading entry positive.
fn make_primitive(row: &mut IntRow) {
    let Some((_, lead)) = row.first() else { return };
    let mut g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * x - b * y` on sparse rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |e| e.0);
        let cj = y.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &x[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon basis built incrementally; each stored row has a distinct
/// leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: usize,
    rows: Vec<IntRow>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.rows
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `row` against the basis; returns the remainder (empty when
    /// `row` lies in the row space).
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        make_primitive(&mut row);
        while let Some((lead, coef)) = row.first() {
            let Some(&p) = self.pivot_row.get(lead) else { break };
            let prow = &self.rows[p];
            let pc = &prow[0].1;
            let g = pc.gcd(coef);
            let (a, b) = (pc / &g, coef / &g);
            row = combine(&a, &row, &b, prow);
            make_primitive(&mut row);
        }
        row
    }

    /// Adds `row` to the basis; returns whether the rank grew.
    pub fn insert(&mut self, row: IntRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let r = self.reduce(row);
        match r.first() {
            None => false,
            Some((lead, _)) => {
                self.pivot_row.insert(*lead, self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }

    pub fn insert_q(&mut self, row: &[(usize, Q)]) -> bool {
        self.insert(integer_row(row))
    }

    /// A solution of the echelon rows (rhs read from column `rhs_col`) with
    /// every free column in `0..rhs_col` set from `free`, by back substitution.
    fn back_substitute(&self, rhs_col: usize, free: &dyn Fn(usize) -> Q, with_rhs: bool) -> Vec<Q> {
        let mut x = vec![Q::zero(); rhs_col];
        for c in 0..rhs_col {
            if !self.has_pivot(c) {
                x[c] = free(c);
            }
        }
        let mut pivots: Vec<usize> = self.pivot_row.keys().copied().filter(|&c| c < rhs_col).collect();
        pivots.sort_unstable_by(|a, b| b.cmp(a));
        for c in pivots {
            let row = &self.rows[self.pivot_row[&c]];
            let mut acc = Q::zero();
            for (j, v) in &row[1..] {
                if *j == rhs_col {
                    if with_rhs {
                        acc += Q::from_integer(v.clone());
                    }
                } else if !x[*j].is_zero() {
                    acc -= &x[*j] * Q::from_integer(v.clone());
                }
            }
            x[c] = acc / Q::from_integer(row[0].1.clone());
        }
        x
    }
}

/// Exact rank of a sparse rational matrix.
pub fn rank(rows: &[QRow], cols: usize) -> usize {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.insert_q(r);
    }
    e.rank()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Q>),
    /// `particular + span(nullspace)`.
    Affine { particular: Vec<Q>, nullspace: Vec<Vec<Q>> },
}

impl Solution {
    /// The minimum Euclidean norm point of the solution set.
    pub fn min_norm(&self) -> Option<Vec<Q>> {
        match self {
            Solution::Inconsistent => None,
            Solution::Unique(x) => Some(x.clone()),
            Solution::Affine { particular, nullspace } => Some(project_out(particular, nullspace)),
        }
    }
}

/// `x` minus its orthogonal projection onto `span(basis)`.
pub fn project_out(x: &[Q], basis: &[Vec<Q>]) -> Vec<Q> {
    if basis.is_empty() {
        return x.to_vec();
    }
    let k = basis.len();
    let gram: Vec<QRow> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (j, dot(&basis[i], &basis[j])))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    let rhs: Vec<Q> = basis.iter().map(|b| dot(b, x)).collect();
    let coeffs = match solve(&gram, &rhs, k) {
        Solution::Unique(c) => c,
        _ => unreachable!("nullspace basis is linearly independent"),
    };
    let mut out = x.to_vec();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(b) {
            if !v.is_zero() {
                *o -= c * v;
            }
        }
    }
    out
}

/// Solves `A x = b` exactly for a sparse rational `A` with `cols` columns.
pub fn solve(rows: &[QRow], rhs: &[Q], cols: usize) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    let mut e = Echelon::new(cols + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        if !b.is_zero() {
            aug.push((cols, b.clone()));
        }
        e.insert_q(&aug);
    }
    if e.has_pivot(cols) {
        return Solution::Inconsistent;
    }
    let particular = e.back_substitute(cols, &|_| Q::zero(), true);
    let free: Vec<usize> = (0..cols).filter(|c| !e.has_pivot(*c)).collect();
    if free.is_empty() {
        return Solution::Unique(particular);
    }
    let nullspace = free
        .iter()
        .map(|&f| e.back_substitute(cols, &|c| if c == f { Q::one() } else { Q::zero() }, false))
        .collect();
    Solution::Affine { particular, nullspace }
}

/// `A^+ b` exactly: the minimum-norm least-squares solution, obtained as the
/// minimum-norm solution of the normal equations.
pub fn pinv_apply(rows: &[QRow], rhs: &[Q], cols: usize) -> Vec<Q> {
    let (ata, atb) = normal_equations(rows, rhs, cols);
    solve(&ata, &atb, cols).min_norm().expect("normal equations are consistent")
}

/// `(A^T A, A^T b)` with `A^T A` as sparse rows.
pub fn normal_equations(rows: &[QRow], rhs: &[Q], cols: usize) -> (Vec<QRow>, Vec<Q>) {
    let mut ata: Vec<std::collections::BTreeMap<usize, Q>> = vec![Default::default(); cols];
    let mut atb = vec![Q::zero(); cols];
    for (r, b) in rows.iter().zip(rhs) {
        for (i, vi) in r {
            if !b.is_zero() {
                atb[*i] += vi * b;
            }
            for (j, vj) in r {
                *ata[*i].entry(*j).or_insert_with(Q::zero) += vi * vj;
            }
        }
    }
    let ata = ata
        .into_iter()
        .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    (ata, atb)
}

/// Dense rational matrix to sparse rows.
pub fn sparse_rows(dense: &[Vec<Q>]) -> Vec<QRow> {
    dense
        .iter()
        .map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect()
}

/// `A x` for sparse rows.
pub fn mat_vec(rows: &[QRow], x: &[Q]) -> Vec<Q> {
    rows.iter()
        .map(|r| r.iter().filter(|(c, _)| !x[*c].is_zero()).fold(Q::zero(), |acc, (c, v)| acc + v * &x[*c]))
        .collect()
}

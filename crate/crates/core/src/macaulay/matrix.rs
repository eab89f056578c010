use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Dense, QRow};
use crate::polysys::Monomial;
use crate::rational::{to_f64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegreeKind {
    Max(u32),
    Total(u32),
}

impl DegreeKind {
    pub fn d(&self) -> u32 {
        match *self {
            DegreeKind::Max(d) | DegreeKind::Total(d) => d,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DegreeKind::Max(_) => "max",
            DegreeKind::Total(_) => "total",
        }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        match *self {
            DegreeKind::Max(d) => m.max_degree() <= d,
            DegreeKind::Total(d) => m.total_degree() <= d,
        }
    }
}

impl fmt::Display for DegreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.d())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    Plain,
    Boolean,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Plain => "plain",
            Flavor::Boolean => "boolean",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowLabel {
    pub multiplier: Monomial,
    pub poly_index: usize,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, f{})", self.multiplier, self.poly_index + 1)
    }
}

/// Row-major sparse rational matrix with labeled rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSparseMatrix {
    pub row_labels: Vec<RowLabel>,
    pub col_labels: Vec<Monomial>,
    pub rows: Vec<QRow>,
}

impl LabeledSparseMatrix {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.rows[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn max_row_sparsity(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Nonzeros per column.
    pub fn col_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_cols()];
        for r in &self.rows {
            for (c, _) in r {
                out[*c] += 1;
            }
        }
        out
    }

    /// Column-major view: for each column the `(row, value)` pairs.
    pub fn columns(&self) -> Vec<Vec<(usize, Q)>> {
        let mut out = vec![Vec::new(); self.num_cols()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out[*c].push((r, v.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Dense {
        let mut d = Dense::zeros(self.num_rows(), self.num_cols());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                d.set(r, *c, to_f64(v));
            }
        }
        d
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows, self.num_cols())
    }

    pub fn mat_vec(&self, y: &[Q]) -> Vec<Q> {
        linalg::exact::mat_vec(&self.rows, y)
    }
}

/// `M y = b` with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct MacaulaySystem {
    pub matrix: LabeledSparseMatrix,
    /// Negated constant term of each row polynomial, sparse.
    pub b: Vec<(usize, Q)>,
    pub kind: DegreeKind,
    pub flavor: Flavor,
    pub num_vars: usize,
}

impl MacaulaySystem {
    pub fn b_dense(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.matrix.num_rows()];
        for (r, v) in &self.b {
            out[*r] = v.clone();
        }
        out
    }

    pub fn b_f64(&self) -> Vec<f64> {
        self.b_dense().iter().map(to_f64).collect()
    }

    /// `[M | -b]`: the coefficient rows including the constant column, which
    /// is placed last.
    pub fn augmented_rows(&self) -> Vec<QRow> {
        let c = self.matrix.num_cols();
        let mut rows = self.matrix.rows.clone();
        for (r, v) in &self.b {
            rows[*r].push((c, -v.clone()));
        }
        rows
    }

    /// Separates an augmented row set back into `(M, b)`.
    pub fn split_augmented(rows: &[QRow], cols: usize) -> (Vec<QRow>, Vec<(usize, Q)>) {
        let mut m = Vec::with_capacity(rows.len());
        let mut b = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let mut row = row.clone();
            if let Some((c, v)) = row.last() {
                if *c == cols {
                    b.push((r, -v.clone()));
                    row.pop();
                }
            }
            m.push(row);
        }
        (m, b)
    }

    /// Nonzeros per column of `[M | -b]`; the last entry is the constant column.
    pub fn augmented_col_counts(&self) -> Vec<usize> {
        let mut counts = self.matrix.col_counts();
        counts.push(self.b.len());
        counts
    }

    /// Euclidean norm of `b` when it is a 0/1 indicator, else a float.
    pub fn b_norm(&self) -> f64 {
        self.b.iter().map(|(_, v)| to_f64(v).powi(2)).sum::<f64>().sqrt()
    }

    /// Exact check of `M y = b`.
    pub fn is_solution(&self, y: &[Q]) -> Result<bool> {
        if y.len() != self.matrix.num_cols() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.num_cols(),
                found: y.len(),
            });
        }
        Ok(self.matrix.mat_vec(y) == self.b_dense())
    }

    pub fn has_normalized_rhs(&self) -> bool {
        self.b.len() == 1 && self.b[0].1 == Q::from_integer(1.into())
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs_entry(&self) -> f64 {
        self.matrix
            .rows
            .iter()
            .flatten()
            .map(|(_, v)| to_f64(&v.abs()))
            .fold(0.0, f64::max)
    }
}

impl LabeledSparseMatrix {
    /// `y^(a)` over this matrix's columns: entry `prod a_i^{e_i}`.
    pub fn monomial_vector(&self, a: &crate::polysys::Assignment) -> Vec<Q> {
        let mask = a.mask();
        self.col_labels
            .iter()
            .map(|m| Q::from_integer((m.eval_boolean(mask) as i64).into()))
            .collect()
    }
}

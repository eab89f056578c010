//! Entry oracles answering `(row, k)` and `(row, col)` queries from the row
//! label alone, without materializing the matrix.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::build::{boolean_row, boolean_terms, row_polynomial};
use super::matrix::{DegreeKind, Flavor, RowLabel};
use crate::error::{Error, Result};
use crate::polysys::{Monomial, PolySystem};
use crate::rational::Q;

/// What identifies a Macaulay matrix: the system, flavor and degree.
#[derive(Clone, Debug)]
pub struct MacaulayDescriptor {
    pub system: PolySystem,
    pub flavor: Flavor,
    pub kind: DegreeKind,
}

impl MacaulayDescriptor {
    pub fn plain(system: PolySystem, kind: DegreeKind) -> Self {
        MacaulayDescriptor {
            system,
            flavor: Flavor::Plain,
            kind,
        }
    }

    /// The field equations of `system` are dropped, as in the construction.
    pub fn boolean(system: &PolySystem, d: u32) -> Self {
        MacaulayDescriptor {
            system: system.without_field_equations(),
            flavor: Flavor::Boolean,
            kind: DegreeKind::Total(d),
        }
    }

    /// Whether `col` labels a column.
    pub fn is_column(&self, col: &Monomial) -> bool {
        if col.num_vars() != self.system.num_vars() || col.is_one() {
            return false;
        }
        match self.flavor {
            Flavor::Plain => self.kind.admits(col),
            Flavor::Boolean => col.is_multilinear() && col.total_degree() <= self.kind.d(),
        }
    }

    /// Whether `label` labels a row.
    pub fn is_row(&self, label: &RowLabel) -> bool {
        let Some(f) = self.system.polys().get(label.poly_index) else {
            return false;
        };
        let m = &label.multiplier;
        if m.num_vars() != self.system.num_vars() {
            return false;
        }
        match (self.flavor, self.kind) {
            (Flavor::Plain, DegreeKind::Max(d)) => m
                .exps()
                .iter()
                .zip(f.max_exponents())
                .all(|(e, fe)| e + fe <= d),
            (Flavor::Plain, DegreeKind::Total(d)) => m.total_degree() + f.total_degree() <= d,
            (Flavor::Boolean, kind) => {
                let Some(mask) = m.bitmask() else { return false };
                boolean_row(&boolean_terms(f), mask)
                    .keys()
                    .all(|t| t.count_ones() <= kind.d())
            }
        }
    }

    fn check_row(&self, label: &RowLabel) -> Result<()> {
        if self.is_row(label) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{label} is not a row label")))
        }
    }
}

/// Column of the `k`-th nonzero entry (0-based) of a row.
pub fn entry_col_oracle(desc: &MacaulayDescriptor, row: &RowLabel, k: usize) -> Result<Monomial> {
    desc.check_row(row)?;
    let p = row_polynomial(&desc.system, desc.flavor, row)?;
    let len = p.terms().filter(|(m, _)| !m.is_one()).count();
    let hit = p.terms().filter(|(m, _)| !m.is_one()).nth(k).map(|(m, _)| m.clone());
    hit.ok_or(Error::OutOfRange { index: k, len })
}

/// Exact entry at `(row, col)`.
pub fn entry_value_oracle(desc: &MacaulayDescriptor, row: &RowLabel, col: &Monomial) -> Result<Q> {
    desc.check_row(row)?;
    if !desc.is_column(col) {
        return Err(Error::InvalidArgument(format!("{col} is not a column label")));
    }
    Ok(row_polynomial(&desc.system, desc.flavor, row)?.coeff(col))
}

/// Row of the `k`-th nonzero entry (0-based, in row order) of a column.
///
/// Candidates are the multipliers that can map some term of some `f_i` onto
/// `col`: `col / t` for plain matrices, and for Boolean ones every multilinear
/// `m` with `m | t = col`, of which there are `2^{|t|}` per term.
pub fn entry_row_oracle(desc: &MacaulayDescriptor, col: &Monomial, k: usize) -> Result<RowLabel> {
    if !desc.is_column(col) {
        return Err(Error::InvalidArgument(format!("{col} is not a column label")));
    }
    let n = desc.system.num_vars();
    let mut candidates: BTreeSet<(usize, Monomial)> = BTreeSet::new();
    for (i, f) in desc.system.polys().iter().enumerate() {
        match desc.flavor {
            Flavor::Plain => {
                for (t, _) in f.terms() {
                    if let Some(m) = t.quotient_of(col) {
                        candidates.insert((i, m));
                    }
                }
            }
            Flavor::Boolean => {
                let c = col.bitmask().expect("Boolean column");
                for (s, _) in boolean_terms(f) {
                    if s & !c != 0 {
                        continue;
                    }
                    let base = c & !s;
                    let mut sub = s;
                    loop {
                        candidates.insert((i, Monomial::from_mask(n, base | sub)));
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & s;
                    }
                }
            }
        }
    }
    let mut hits = Vec::new();
    for (i, m) in candidates {
        let label = RowLabel {
            multiplier: m,
            poly_index: i,
        };
        if desc.is_row(&label) && !row_polynomial(&desc.system, desc.flavor, &label)?.coeff(col).is_zero() {
            hits.push(label);
        }
    }
    let len = hits.len();
    hits.into_iter().nth(k).ok_or(Error::OutOfRange { index: k, len })
}

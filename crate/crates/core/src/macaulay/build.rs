use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::{DegreeKind, Flavor, LabeledSparseMatrix, MacaulaySystem, RowLabel};
use crate::error::{Error, Result};
use crate::linalg::QRow;
use crate::polysys::{monomials_max_degree, monomials_total_degree, Field, Monomial, PolySystem, Polynomial};
use crate::rational::{binomial, Q};

/// Default column cap for plain Macaulay materialization.
pub const PLAIN_MAX_COLUMNS: u128 = 100_000;
/// Default variable cap for Boolean Macaulay materialization.
pub const BOOLEAN_MAX_VARS: usize = 14;

/// The multilinear image of `p`: every exponent clamped to at most 1.
pub fn multilinearize(p: &Polynomial) -> Polynomial {
    Polynomial::new(
        p.num_vars(),
        p.field(),
        p.terms().map(|(m, c)| (m.multilinearize(), c.clone())),
    )
    .expect("same shape as the input")
}

/// Number of nonconstant monomials admitted by `kind` in `n` variables.
pub fn plain_column_count(n: usize, kind: DegreeKind) -> u128 {
    let d = kind.d() as u128;
    let count = match kind {
        DegreeKind::Max(_) => (d + 1).checked_pow(n as u32),
        DegreeKind::Total(_) => u128::try_from(binomial(n as u64 + d as u64, d as u64)).ok(),
    };
    count.map_or(u128::MAX, |c| c - 1)
}

/// Nonconstant monomials admitted by `kind`, in canonical order.
pub fn plain_columns(n: usize, kind: DegreeKind, cap: u128) -> Result<Vec<Monomial>> {
    let count = plain_column_count(n, kind);
    if count > cap {
        return Err(Error::CapacityExceeded {
            what: "Macaulay columns",
            requested: count,
            cap,
        });
    }
    let all = match kind {
        DegreeKind::Max(d) => monomials_max_degree(n, d),
        DegreeKind::Total(d) => monomials_total_degree(n, d),
    };
    Ok(all.into_iter().filter(|m| !m.is_one()).collect())
}

/// Nonconstant multilinear monomials of degree at most `d` as bitmasks, in
/// canonical order.
pub fn boolean_columns(n: usize, d: u32) -> Vec<u64> {
    let mut masks: Vec<u64> = (1..1u64 << n).filter(|m| m.count_ones() <= d).collect();
    masks.sort_by_key(|m| Monomial::from_mask(n, *m));
    masks
}

fn all_masks_sorted(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), Monomial::from_mask(n, *m)));
    masks
}

/// Multipliers `m` with `deg(m f) <= d` under `kind`, in canonical order.
fn multipliers(f: &Polynomial, kind: DegreeKind) -> Vec<Monomial> {
    let n = f.num_vars();
    match kind {
        DegreeKind::Max(d) => {
            let bounds: Vec<u32> = f.max_exponents().iter().map(|e| d - e).collect();
            let mut out: Vec<Monomial> = monomials_max_degree(n, d)
                .into_iter()
                .filter(|m| m.exps().iter().zip(&bounds).all(|(e, b)| e <= b))
                .collect();
            out.sort();
            out
        }
        DegreeKind::Total(d) => monomials_total_degree(n, d - f.total_degree()),
    }
}

fn check_degree(sys: &PolySystem, kind: DegreeKind) -> Result<()> {
    for (i, p) in sys.polys().iter().enumerate() {
        let deg = match kind {
            DegreeKind::Max(_) => p.max_degree(),
            DegreeKind::Total(_) => p.total_degree(),
        };
        if deg > kind.d() {
            return Err(Error::InvalidArgument(format!(
                "polynomial {i} has {} degree {deg} > d = {}",
                kind.name(),
                kind.d()
            )));
        }
    }
    Ok(())
}

fn require_c(sys: &PolySystem) -> Result<()> {
    if sys.field() != Field::C {
        return Err(Error::FieldMismatch {
            expected: Field::C,
            found: sys.field(),
        });
    }
    Ok(())
}

/// Row polynomial of a label: `m f` (plain) or `psi(m f)` (Boolean).
pub fn row_polynomial(sys: &PolySystem, flavor: Flavor, label: &RowLabel) -> Result<Polynomial> {
    let f = sys.polys().get(label.poly_index).ok_or(Error::OutOfRange {
        index: label.poly_index,
        len: sys.len(),
    })?;
    if label.multiplier.num_vars() != sys.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: sys.num_vars(),
            found: label.multiplier.num_vars(),
        });
    }
    let p = f.mul_monomial(&label.multiplier);
    Ok(match flavor {
        Flavor::Plain => p,
        Flavor::Boolean => multilinearize(&p),
    })
}

/// The Macaulay system of `sys` at degree `kind`, with the default column cap.
pub fn build_macaulay(sys: &PolySystem, kind: DegreeKind) -> Result<MacaulaySystem> {
    build_macaulay_with_cap(sys, kind, PLAIN_MAX_COLUMNS)
}

pub fn build_macaulay_with_cap(sys: &PolySystem, kind: DegreeKind, cap: u128) -> Result<MacaulaySystem> {
    require_c(sys)?;
    check_degree(sys, kind)?;
    let n = sys.num_vars();
    let col_labels = plain_columns(n, kind, cap)?;
    let index: HashMap<&Monomial, usize> = col_labels.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let row_labels: Vec<RowLabel> = sys
        .polys()
        .iter()
        .enumerate()
        .flat_map(|(i, f)| {
            multipliers(f, kind).into_iter().map(move |m| RowLabel {
                multiplier: m,
                poly_index: i,
            })
        })
        .collect();
    let built: Vec<(QRow, Q)> = row_labels
        .par_iter()
        .map(|label| {
            let f = &sys.polys()[label.poly_index];
            let mut row = Vec::with_capacity(f.sparsity());
            let mut constant = Q::zero();
            for (t, c) in f.terms() {
                let mt = t.mul(&label.multiplier);
                if mt.is_one() {
                    constant = c.clone();
                } else {
                    row.push((index[&mt], c.clone()));
                }
            }
            row.sort_unstable_by_key(|e| e.0);
            (row, -constant)
        })
        .collect();
    Ok(assemble(row_labels, col_labels, built, kind, Flavor::Plain, n))
}

fn assemble(
    row_labels: Vec<RowLabel>,
    col_labels: Vec<Monomial>,
    built: Vec<(QRow, Q)>,
    kind: DegreeKind,
    flavor: Flavor,
    num_vars: usize,
) -> MacaulaySystem {
    let mut rows = Vec::with_capacity(built.len());
    let mut b = Vec::new();
    for (r, (row, rhs)) in built.into_iter().enumerate() {
        if !rhs.is_zero() {
            b.push((r, rhs));
        }
        rows.push(row);
    }
    MacaulaySystem {
        matrix: LabeledSparseMatrix {
            row_labels,
            col_labels,
            rows,
        },
        b,
        kind,
        flavor,
        num_vars,
    }
}

/// `psi(m f)` as a mask-indexed map, zero terms dropped.
pub(crate) fn boolean_row(f_terms: &[(u64, Q)], m: u64) -> BTreeMap<u64, Q> {
    let mut acc: BTreeMap<u64, Q> = BTreeMap::new();
    for (t, c) in f_terms {
        *acc.entry(t | m).or_insert_with(Q::zero) += c;
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// `psi(f)` as `(mask, coefficient)` pairs.
pub(crate) fn boolean_terms(f: &Polynomial) -> Vec<(u64, Q)> {
    multilinearize(f)
        .terms()
        .map(|(m, c)| (m.bitmask().expect("multilinear"), c.clone()))
        .collect()
}

/// The Boolean Macaulay system of `F1` at total degree `d`, with the default
/// variable cap. Field equations present in `sys1` are dropped first: they
/// are implicit in the construction.
pub fn build_boolean_macaulay(sys1: &PolySystem, d: u32) -> Result<MacaulaySystem> {
    build_boolean_macaulay_with_cap(sys1, d, BOOLEAN_MAX_VARS)
}

pub fn build_boolean_macaulay_with_cap(sys1: &PolySystem, d: u32, max_vars: usize) -> Result<MacaulaySystem> {
    require_c(sys1)?;
    let n = sys1.num_vars();
    if n > max_vars {
        return Err(Error::CapacityExceeded {
            what: "Boolean Macaulay variables",
            requested: n as u128,
            cap: max_vars as u128,
        });
    }
    if d == 0 || d as usize > n {
        return Err(Error::InvalidArgument(format!("Boolean degree {d} not in 1..={n}")));
    }
    let f1 = sys1.without_field_equations();
    let cols = boolean_columns(n, d);
    let mut index = vec![usize::MAX; 1 << n];
    for (i, m) in cols.iter().enumerate() {
        index[*m as usize] = i;
    }
    let multipliers = all_masks_sorted(n);
    let terms: Vec<Vec<(u64, Q)>> = f1.polys().iter().map(boolean_terms).collect();
    let candidates: Vec<(usize, u64)> = (0..f1.len())
        .flat_map(|i| multipliers.iter().map(move |m| (i, *m)))
        .collect();
    let built: Vec<Option<(RowLabel, QRow, Q)>> = candidates
        .par_iter()
        .map(|&(i, m)| {
            let acc = boolean_row(&terms[i], m);
            if acc.keys().any(|t| t.count_ones() > d) {
                return None;
            }
            let mut constant = Q::zero();
            let mut row: QRow = Vec::with_capacity(acc.len());
            for (t, c) in acc {
                if t == 0 {
                    constant = c;
                } else {
                    row.push((index[t as usize], c));
                }
            }
            row.sort_unstable_by_key(|e| e.0);
            let label = RowLabel {
                multiplier: Monomial::from_mask(n, m),
                poly_index: i,
            };
            Some((label, row, -constant))
        })
        .collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (label, row, rhs) in built.into_iter().flatten() {
        labels.push(label);
        rows.push((row, rhs));
    }
    let col_labels = cols.iter().map(|m| Monomial::from_mask(n, *m)).collect();
    Ok(assemble(labels, col_labels, rows, DegreeKind::Total(d), Flavor::Boolean, n))
}

//! Exact checks relating the plain and Boolean Macaulay systems and their
//! solutions to the polynomial system.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::build::{build_boolean_macaulay, build_macaulay_with_cap};
use super::matrix::DegreeKind;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, QRow, Solution};
use crate::polysys::{monomials_max_degree, Assignment, Field, Monomial, PolySystem};
use crate::rational::Q;

/// Column cap for the block check.
pub const BLOCK_MAX_COLUMNS: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockVerdict {
    pub n: usize,
    pub d: u32,
    pub cols: usize,
    /// Size of the identity block: monomials of max degree at most `d` that
    /// are not multilinear.
    pub identity_dim: usize,
    pub identity_block_ok: bool,
    pub rank_plain: usize,
    pub rank_block: usize,
    pub rank_stacked: usize,
    pub row_space_equal: bool,
}

/// Compares the row space of the plain Macaulay matrix of `F1 + F2` at max
/// degree `d` with that of the block matrix `[[0, B], [I, B2]]`, where `B`
/// is the augmented Boolean Macaulay matrix of `F1` and the rows of
/// `[I, B2]` are the coefficient vectors of `X^a - psi(X^a)`.
///
/// Columns are ordered non-multilinear first, then multilinear, with the
/// constant monomial last; all matrices are augmented.
pub fn block_reduce_check(sys: &PolySystem, d: u32) -> Result<BlockVerdict> {
    if sys.field() != Field::C {
        return Err(Error::FieldMismatch {
            expected: Field::C,
            found: sys.field(),
        });
    }
    let n = sys.num_vars();
    if n == 0 || d < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 2, got n = {n}, d = {d}")));
    }
    let total = (d as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > BLOCK_MAX_COLUMNS {
        return Err(Error::CapacityExceeded {
            what: "block check columns",
            requested: total,
            cap: BLOCK_MAX_COLUMNS,
        });
    }
    let f1 = sys.without_field_equations();
    let full = sys.with_field_equations()?;

    let all = monomials_max_degree(n, d);
    let (mut order, multilinear): (Vec<Monomial>, Vec<Monomial>) =
        all.into_iter().partition(|m| !m.is_multilinear());
    let identity_dim = order.len();
    let mut ml: Vec<Monomial> = multilinear.into_iter().filter(|m| !m.is_one()).collect();
    ml.sort();
    order.extend(ml);
    order.push(Monomial::one(n));
    let cols = order.len();
    let index: HashMap<&Monomial, usize> = order.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let remap = |labels: &[Monomial], rows: Vec<QRow>| -> Vec<QRow> {
        rows.into_iter()
            .map(|r| {
                let mut out: QRow = r
                    .into_iter()
                    .map(|(c, v)| {
                        let m = labels.get(c).cloned().unwrap_or_else(|| Monomial::one(n));
                        (index[&m], v)
                    })
                    .collect();
                out.sort_unstable_by_key(|e| e.0);
                out
            })
            .collect()
    };

    let plain = build_macaulay_with_cap(&full, DegreeKind::Max(d), BLOCK_MAX_COLUMNS)?;
    let plain_rows = remap(&plain.matrix.col_labels, plain.augmented_rows());

    let mut block_rows = Vec::new();
    if !f1.is_empty() {
        let bm = build_boolean_macaulay(&f1, n as u32)?;
        block_rows.extend(remap(&bm.matrix.col_labels, bm.augmented_rows()));
    }
    let mut identity_block_ok = true;
    for (i, m) in order[..identity_dim].iter().enumerate() {
        let psi = m.multilinearize();
        let mut row: QRow = vec![(i, Q::one()), (index[&psi], -Q::one())];
        row.sort_unstable_by_key(|e| e.0);
        identity_block_ok &= row[0] == (i, Q::one()) && row[1].0 >= identity_dim;
        block_rows.push(row);
    }

    let rank_of = |rows: &[QRow]| -> (Echelon, usize) {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert_q(r);
        }
        let k = e.rank();
        (e, k)
    };
    let (_, rank_plain) = rank_of(&plain_rows);
    let (mut e, rank_block) = rank_of(&block_rows);
    for r in &plain_rows {
        e.insert_q(r);
    }
    let rank_stacked = e.rank();
    Ok(BlockVerdict {
        n,
        d,
        cols,
        identity_dim,
        identity_block_ok,
        rank_plain,
        rank_block,
        rank_stacked,
        row_space_equal: rank_plain == rank_block && rank_block == rank_stacked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceVerdict {
    pub solutions: usize,
    pub rank: usize,
    pub cols: usize,
    pub consistent: bool,
    pub unique: bool,
    /// Every brute-force solution's monomial vector solves `M y = b`.
    pub all_solutions_satisfy: bool,
    /// For a unique linear solution: it is the 0/1 monomial vector of the
    /// unique Boolean solution, with weight `2^h - 1`.
    pub y_matches_monomial_vector: Option<bool>,
    /// For a unique linear solution: its degree-one coordinates solve the
    /// polynomial system.
    pub projected_solves: Option<bool>,
    pub ok: bool,
}

/// Relates the solutions of the Boolean Macaulay system (degree `n`) of a
/// normalized system to its Boolean solutions.
pub fn solution_correspondence_check(sys: &PolySystem) -> Result<CorrespondenceVerdict> {
    let n = sys.num_vars();
    let full = sys.with_field_equations()?;
    let bm = build_boolean_macaulay(sys, n as u32)?;
    let sols = full.brute_force_solutions()?;
    let cols = bm.matrix.num_cols();
    let all_solutions_satisfy = sols
        .iter()
        .map(|a| bm.is_solution(&bm.matrix.monomial_vector(a)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    let rank = bm.matrix.rank();
    let solution = linalg::solve(&bm.matrix.rows, &bm.b_dense(), cols);
    let mut v = CorrespondenceVerdict {
        solutions: sols.len(),
        rank,
        cols,
        consistent: !matches!(solution, Solution::Inconsistent),
        unique: matches!(solution, Solution::Unique(_)),
        all_solutions_satisfy,
        y_matches_monomial_vector: None,
        projected_solves: None,
        ok: false,
    };
    v.ok = match &solution {
        Solution::Inconsistent => sols.is_empty(),
        Solution::Affine { .. } => sols.len() != 1 && all_solutions_satisfy,
        Solution::Unique(y) => {
            let binary = y.iter().all(|v| v.is_zero() || v.is_one());
            let weight = y.iter().filter(|v| v.is_one()).count();
            let matches = sols.len() == 1 && binary && {
                let h = sols[0].weight();
                *y == bm.matrix.monomial_vector(&sols[0]) && weight == (1usize << h) - 1
            };
            let mut mask = 0u64;
            let mut projectable = true;
            for (c, m) in bm.matrix.col_labels.iter().enumerate() {
                if m.total_degree() == 1 {
                    let i = m.support_mask().trailing_zeros();
                    if y[c].is_one() {
                        mask |= 1 << i;
                    } else if !y[c].is_zero() {
                        projectable = false;
                    }
                }
            }
            let projected = projectable && full.is_solution(&Assignment::from_mask(n, mask))?;
            v.y_matches_monomial_vector = Some(matches);
            v.projected_solves = Some(projected);
            matches && projected && all_solutions_satisfy
        }
    };
    Ok(v)
}

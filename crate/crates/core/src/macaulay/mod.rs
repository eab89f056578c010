//! Macaulay and Boolean Macaulay linear systems.
//!
//! Rows are labeled by `(multiplier, polynomial index)`, columns by the
//! nonconstant monomials in the crate-wide order (total degree, then
//! reverse lexicographic). The constant monomial is split off as the
//! right-hand side `b`, so that `M y = b` for every monomial solution vector
//! `y`.

mod build;
mod equivalence;
mod io;
mod matrix;
mod oracle;

pub use build::{
    boolean_columns, build_boolean_macaulay, build_boolean_macaulay_with_cap, build_macaulay,
    build_macaulay_with_cap, multilinearize, plain_column_count, plain_columns, row_polynomial,
    BOOLEAN_MAX_VARS, PLAIN_MAX_COLUMNS,
};
pub use equivalence::{
    block_reduce_check, solution_correspondence_check, BlockVerdict, CorrespondenceVerdict,
};
pub use io::{read_matrix, write_matrix};
pub use matrix::{DegreeKind, Flavor, LabeledSparseMatrix, MacaulaySystem, RowLabel};
pub use oracle::{entry_col_oracle, entry_row_oracle, entry_value_oracle, MacaulayDescriptor};

//! Condition numbers, solution-vector norms, and the lower-bound machinery:
//! shortest affine-hull vectors, symmetrized Gram matrices with exact
//! positive-definiteness certificates, and search-cost comparators.

mod affine;
mod gram;
mod kappa;
mod norms;
mod report;
mod search;

pub use affine::{combination, gram, shortest_affine_norm, AffineShortest};
pub use gram::{
    certify_combined, certify_pd_bound, certify_with, gram_diagonal_by_pairs, gram_minor_bound,
    gram_symmetrized, support_class_size, GammaRule, GramSpec, PdVerdict,
};
pub use kappa::{condition_numbers, SystemConditioning};
pub use norms::{monomial_solution_vector, norm_sq_closed_form, MonomialSolutionVector};
pub use report::{analyze, AnalyticBound, AnalyzeOptions, BoundReport};
pub use search::{entropy_bound_holds, geometric_bound, search_costs, SearchCosts};

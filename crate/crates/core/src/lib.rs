//! Macaulay and Boolean Macaulay linear systems of Boolean quadratic
//! polynomial systems.
//!
//! The crate builds both matrix flavors exactly over the rationals, computes
//! truncated condition numbers and the analytic lower bounds that govern any
//! linear-system based solver run on them, certifies the symmetrized Gram
//! bound in exact arithmetic, and simulates the measurement-based solution
//! extraction (affine-hash isolation followed by coupon-collector sampling).

pub mod cli;
pub mod condition;
pub mod error;
pub mod linalg;
pub mod macaulay;
pub mod polysys;
pub mod rational;
pub mod reduce;
pub mod rng;
pub mod sampler;

pub use error::{Error, Result};

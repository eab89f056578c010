//! Boolean polynomial systems over F2 or over C (exact rationals), evaluation,
//! the brute-force solving oracle and the system file format.

mod io;
mod monomial;
mod polynomial;
pub mod random;
mod system;

pub use io::{load_system, parse_system, save_system, write_system};
pub use monomial::{monomials_max_degree, monomials_total_degree, Monomial};
pub use polynomial::Polynomial;
pub use system::{Assignment, Field, PolySystem, DEFAULT_BRUTE_FORCE_CAP, MAX_VARS};

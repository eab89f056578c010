//! Linear algebra backends: exact sparse echelon over the rationals, exact
//! LDL^T certificates, and a floating-point SVD.

pub mod exact;
pub mod ldl;
pub mod modp;
pub mod svd;

pub use exact::{pinv_apply, rank, solve, Echelon, IntRow, QRow, Solution};
pub use ldl::{ldl_certify, LdlCertificate};
pub use svd::{kappa, kappa_b, svd, Conditioning, Dense, Svd};

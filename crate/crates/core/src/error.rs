use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} needs {requested}, cap is {cap}")]
    CapacityExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: crate::polysys::Field,
        found: crate::polysys::Field,
    },

    #[error("polynomial {index} has no terms")]
    EmptyPolynomial { index: usize },

    #[error("polynomial {index} has total degree {degree}, expected at most 2")]
    NotQuadratic { index: usize, degree: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("matrix is identically zero")]
    ZeroMatrix,

    #[error("Gram minor for h = {h} is singular (d < n?)")]
    SingularMinor { h: usize },

    #[error("linear system is rank deficient ({rank} of {cols} columns); isolate a unique solution first")]
    NonUnique { rank: usize, cols: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

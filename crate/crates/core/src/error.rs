use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("argument must be nonzero")]
    Zero,

    #[error("{0} is not square-free")]
    NotSquareFree(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular curve: discriminant is zero")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("ambiguous lattice recognition: ratio {ratio} has no rational approximation with denominator <= {bound} within {tolerance:e}")]
    AmbiguousLattice {
        ratio: String,
        bound: u64,
        tolerance: f64,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

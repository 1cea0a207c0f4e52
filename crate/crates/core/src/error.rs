use thiserror::Error;

/// Errors raised by state construction and invariant evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("index {index:?} out of range for dims {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },
    #[error("duplicate amplitude entry for index {0:?}")]
    DuplicateIndex(Vec<usize>),
    #[error("amplitudes are all zero")]
    ZeroState,
    #[error("non-finite amplitude at index {0:?}")]
    NonFinite(Vec<usize>),
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("factor {party} is not unitary (max residual {residual:e})")]
    NotUnitary { party: usize, residual: f64 },
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("state is not permutation symmetric (max deviation {deviation:e} under swap of parties {a} and {b})")]
    NotSymmetric { a: usize, b: usize, deviation: f64 },
    #[error("degenerate polynomial: all coefficients vanish")]
    DegeneratePolynomial,
    #[error("invariant report is inconsistent: {0}")]
    InconsistentReport(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("malformed state file: {0}")]
    Format(String),
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_) | Error::DegeneratePolynomial)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by validation, construction, and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimMismatch { expected: usize, actual: usize },

    #[error("length mismatch: expected {expected} coefficients, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian: max |a_jk - conj(a_kj)| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is {trace} (|tr - 1| exceeds {tolerance:e})")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("not positive semidefinite: minimum eigenvalue {min_eigenvalue:e} below {floor:e}")]
    NotPositive { min_eigenvalue: f64, floor: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid weights: {0}")]
    BadWeights(String),

    #[error("vectors are not orthonormal: max |<u_j|u_k> - delta_jk| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("frame is not tight: residual {residual:e} exceeds {tolerance:e}")]
    NotTight { residual: f64, tolerance: f64 },

    #[error("frame is not an orthonormal basis: {0}")]
    NotBasis(String),

    #[error("matrix is not unitary: ||U^dag U - I||_F = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("bad count: {0}")]
    BadCount(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("kappa must be positive and finite, got {0}")]
    BadKappa(f64),

    #[error("theta series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("index {index} outside the symmetric range -{s}..={s}")]
    IndexOutOfRange { index: i64, s: usize },

    #[error("effect {index} is not rank one: second eigenvalue {second_eigenvalue:e}")]
    NotRankOne { index: usize, second_eigenvalue: f64 },

    #[error("not a POVM: {0}")]
    NotPovm(String),

    #[error("outcome {index} has probability {probability:e}")]
    ZeroProbability { index: usize, probability: f64 },

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

use thiserror::Error;

/// Errors raised by the transform library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected m = {expected}, found m = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator count m = {0} outside supported range 2..=12")]
    UnsupportedDimension(usize),

    #[error("grade {grade} out of range for m = {m}")]
    GradeOutOfRange { grade: usize, m: usize },

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("degree {degree} exceeds table maximum {max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("momentum truncation too small: tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    Truncation { bound: f64, tolerance: f64 },

    #[error("quadrature did not converge: |I(2n) - I(n)| = {difference:e} > {tolerance:e}")]
    NonConvergence { difference: f64, tolerance: f64 },

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("signal schema error: {0}")]
    Schema(String),
}

impl Error {
    /// True for failures of a numeric integration (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Truncation { .. } | Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

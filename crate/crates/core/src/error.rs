use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is singular (|det| = {0:e})")]
    SingularMatrix(f64),

    #[error("matrix is not bistochastic")]
    NotBistochastic,

    #[error("Birkhoff decomposition failed: residual {0:e} after step limit")]
    DecompositionFailed(f64),

    #[error("invalid generator schedule: {0}")]
    InvalidSchedule(String),

    #[error("quadrature failed on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64 },

    #[error("map is not trace preserving (column sum deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("map is not unital (shift norm {0:e})")]
    NotUnital(f64),

    #[error("mu = {0} outside [1, 2)")]
    InvalidMu(f64),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("generators are linearly dependent (rank {rank} < {count})")]
    DependentGenerators { rank: usize, count: usize },

    #[error("generators do not close under the commutator (residual {0:e})")]
    NotClosed(f64),
}

impl Error {
    /// True for errors caused by bad input rather than numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SingularMatrix(_)
                | Error::DecompositionFailed(_)
                | Error::QuadratureFailure { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

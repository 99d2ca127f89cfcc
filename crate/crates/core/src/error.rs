use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: max |m_ij - conj(m_ji)| = {max_deviation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NonHermitianInput { max_deviation: f64, tolerance: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("infinite-horizon integral needs a strictly positive decay rate, got {rate}")]
    NonDecayingWeight { rate: f64 },

    #[error("time grid needs at least 2 points, got {points}")]
    DegenerateGrid { points: usize },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by constructions, verification and table tooling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {0} exceeds the supported bound of 2^20")]
    FieldTooLarge(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a valid {kind}: {reason}")]
    InvalidStructure { kind: &'static str, reason: String },

    #[error("Gram matrix has numerical rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("Gram matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),

    #[error("eigendecomposition did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("no real Hadamard matrix of order {0} is available")]
    NoHadamard(usize),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(kind: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidStructure {
        kind,
        reason: reason.into(),
    }
}

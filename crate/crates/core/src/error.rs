use thiserror::Error;

/// Errors produced by matrix construction, design and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error(
        "eigen-solver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    Convergence { sweeps: usize, off_norm: f64 },
    #[error("constraint matrix is rank deficient: {0}")]
    ConstraintRank(String),
    #[error("singular KKT system: {0}")]
    Solver(String),
    #[error("invalid problem: {field}: {message}")]
    Spec {
        field: &'static str,
        message: String,
    },
    #[error("grid does not cover {0}")]
    Coverage(String),
}

impl Error {
    pub(crate) fn spec(field: &'static str, message: impl Into<String>) -> Self {
        Error::Spec {
            field,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian: max deviation {deviation:e} exceeds {tol:e}")]
    Hermiticity { deviation: f64, tol: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("unknown name: {0}")]
    Name(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("outcome has zero probability ({probability:e} <= {eps:e})")]
    ZeroProbability { probability: f64, eps: f64 },
    #[error("direction is not unit norm: |d| = {norm}")]
    Norm { norm: f64 },
    #[error("inequality {inequality} expects {expected} settings, got {got}")]
    Arity {
        inequality: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("model produced invalid probabilities: {0}")]
    Model(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

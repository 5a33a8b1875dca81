use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("top eigenvalue is degenerate (gap {gap:e})")]
    DegenerateEigenvalue { gap: f64 },

    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("{what} normalization off by {deviation:e}")]
    Normalization { what: &'static str, deviation: f64 },

    #[error("quadrature grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("no interior maximum in scan over [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::spectra::SequenceFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid degree {degree} for {family} (minimum {min})")]
    InvalidDegree {
        family: SequenceFamily,
        degree: usize,
        min: usize,
    },

    #[error("polynomial must be monic with degree >= 1")]
    InvalidPolynomial,

    #[error("coefficient does not fit in a double at degree {degree}")]
    CoefficientOverflow { degree: usize },

    #[error("root finder did not converge after {iterations} sweeps (worst residual {worst_residual:e})")]
    NoConvergence {
        iterations: usize,
        worst_residual: f64,
    },

    #[error("root finding failed at matrix size k = {k}: {source}")]
    AtSize {
        k: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("zero eigenvalue at matrix size k = {k} has no reciprocal")]
    ZeroEigenvalue { k: usize },

    #[error("{family} is not supported here: {reason}")]
    UnsupportedFamily {
        family: SequenceFamily,
        reason: &'static str,
    },

    #[error("size {size} exceeds the eigenset's n_max = {n_max}")]
    SizeOutOfRange { size: usize, n_max: usize },

    #[error("parameter t = {0} outside [0, 1]")]
    TOutOfRange(f64),

    #[error("argument is undefined at the centre point")]
    UndefinedAngle,

    #[error("singular evaluation at z = 0")]
    Singularity,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditionedFit(String),

    #[error("fit did not converge (best sse {sse}, parameters {params:?})")]
    FitNoConvergence { params: Vec<f64>, sse: f64 },

    #[error("eigenset is empty")]
    EmptyEigenSet,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

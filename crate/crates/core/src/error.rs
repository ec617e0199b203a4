use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A step would leave the disk (`r * |g| >= 1`).
    #[error("step parameter {r} times gradient magnitude {gmag} is not below 1")]
    StepDomain { r: f64, gmag: f64 },

    #[error("direction has magnitude {0:e}, too small to normalize")]
    ZeroDirection(f64),

    #[error("degenerate Möbius transform: |a|^2 - |b|^2 = {0:e}")]
    DegenerateTransform(f64),

    /// Two points of an active pair coincide; the distance is not differentiable there.
    #[error("points {0} and {1} coincide but their dissimilarity is active")]
    CoincidentPair(usize, usize),

    /// The line search shrank the step below its floor without finding decrease.
    #[error("line search found no decrease down to step {last_step:e}")]
    StationaryLineSearch { last_step: f64 },

    #[error("size mismatch: expected {expected} points, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("invalid dissimilarity data: {0}")]
    InvalidData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected: {0} node pairs are unreachable")]
    Disconnected(usize),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

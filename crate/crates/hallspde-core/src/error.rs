//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two fields or states do not share a grid.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A sample array has the wrong shape.
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Gronwall lemma admissibility condition violated.
    #[error("Gronwall admissibility violated: {0}")]
    Admissibility(String),

    /// A mark is not part of the declared mark space.
    #[error("unknown mark: {0}")]
    UnknownMark(String),

    /// An ensemble reduction was asked for zero trajectories.
    #[error("empty ensemble")]
    EmptyEnsemble,

    /// Two cadlag paths do not share a horizon.
    #[error("horizon mismatch: {0} vs {1}")]
    HorizonMismatch(f64, f64),

    /// Snapshot file is malformed.
    #[error("snapshot format: {0}")]
    SnapshotFormat(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

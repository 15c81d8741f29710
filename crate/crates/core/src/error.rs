use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty ensemble")]
    EmptyEnsemble,

    #[error("alpha out of range: {0}")]
    AlphaOutOfRange(f64),

    #[error("probability out of range: {0}")]
    ProbabilityOutOfRange(f64),

    #[error("invalid classifier config: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("member index {index} out of pool bounds (pool size {pool_size})")]
    IndexOutOfBounds { index: usize, pool_size: usize },

    #[error("empty sample set")]
    EmptyData,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid GA config: {0}")]
    InvalidGaConfig(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("non-numeric cell at row {row}, column {column}: {value:?}")]
    NonNumericCell {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("non-binary label at row {row}: {value}")]
    NonBinaryLabel { row: usize, value: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid experiment config: {0}")]
    InvalidExperiment(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

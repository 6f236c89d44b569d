use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Non-finite values showed up in an input or an iterate.
    #[error("numerical failure: {message} (last good iteration: {last_good_iteration:?})")]
    Numerical {
        message: String,
        last_good_iteration: Option<usize>,
    },

    #[error("factorization broke down at pivot {pivot}: {message}")]
    Singularity { pivot: usize, message: String },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed matrix file at byte offset {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot compute metrics: {0}")]
    Metrics(String),
}

impl Error {
    pub(crate) fn numerical(message: impl Into<String>) -> Self {
        Error::Numerical {
            message: message.into(),
            last_good_iteration: None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

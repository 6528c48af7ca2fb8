use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("numeric overflow: non-finite state at integration step {step}")]
    NumericOverflow { step: usize },

    #[error("threshold {theta} is outside the analytic model (requires theta > 1)")]
    OutOfModel { theta: f64 },

    #[error("wrong operation: {0}")]
    WrongOperation(String),

    #[error("no optimum: {0}")]
    NoOptimum(String),

    #[error("i/o error reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported audio format in {path}: {detail}")]
    Format { path: PathBuf, detail: String },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

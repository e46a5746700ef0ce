use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("unsupported transform size {0} (expected 64 or 128)")]
    UnsupportedSize(usize),

    #[error("unsupported parallelism {0} (expected 2 or 4)")]
    UnsupportedParallelism(usize),

    #[error("{0} is not invertible modulo 3329")]
    NotInvertible(u16),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("unknown algorithm id `{0}`")]
    UnknownAlgorithm(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

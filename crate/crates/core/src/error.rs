//! Error type shared across the crate.

use std::fmt;

/// Errors produced by tensor kernels, the model, training, and decoding.
#[derive(Debug)]
pub enum Error {
    /// Tensor shape mismatch (e.g. matmul inner dimensions disagree).
    Shape(String),
    /// Numeric failure: NaN inputs, diverged loss.
    Numeric(String),
    /// Sequence exceeds a configured capacity (positions past `max_len`).
    Capacity(String),
    /// Invalid configuration or input data.
    Validation(String),
    /// Index out of range (e.g. cross-entropy target id >= vocab).
    Index(String),
    /// Decoder cache contiguity or bookkeeping violation.
    Cache(String),
    /// Autodiff graph misuse (e.g. backward from a detached tensor).
    Graph(String),
    /// Underlying I/O failure.
    Io(std::io::Error),
    /// Malformed artifact: checkpoint, config, or dataset file.
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::Numeric(m) => write!(f, "numeric error: {m}"),
            Error::Capacity(m) => write!(f, "capacity error: {m}"),
            Error::Validation(m) => write!(f, "validation error: {m}"),
            Error::Index(m) => write!(f, "index error: {m}"),
            Error::Cache(m) => write!(f, "cache error: {m}"),
            Error::Graph(m) => write!(f, "graph error: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Format(m) => write!(f, "format error: {m}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

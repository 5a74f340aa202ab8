use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside supported range 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graphs on {0} and {1} vertices cannot be compared")]
    MismatchedOrder(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An exhaustive scan was refused because it exceeds the work guard.
    #[error("work guard refused: {0}")]
    WorkGuard(String),
    #[error("time budget of {budget_secs}s exhausted")]
    BudgetExceeded { budget_secs: u64 },
    #[error("malformed graph text at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

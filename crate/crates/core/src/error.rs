use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("propagation exceeded the event budget of {budget} events ({diagnostic})")]
    EventBudget { budget: u64, diagnostic: String },

    #[error("unbounded shock on bisector {0}; a bounding box is required")]
    Unbounded(String),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("node {node} has degree {degree}, feature layout covers degrees up to 4")]
    FeatureOverflow { node: usize, degree: usize },

    #[error("grid resolution too fine: {cells} cells exceeds the limit of {limit}")]
    Resolution { cells: u64, limit: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

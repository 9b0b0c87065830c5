use thiserror::Error;

/// Errors raised by graph construction, parsing and the search engines.
///
/// Absence of a relation is never an error; searches return `None` for that.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("structural error: {message} (vertices {vertices:?})")]
    Structural { message: String, vertices: Vec<usize> },

    /// A precondition failed; `certificate` carries a JSON rendering of the
    /// object that proves it (a star witness, a forbidden subgraph, ...).
    #[error("precondition failed: {message}")]
    Precondition {
        message: String,
        certificate: Option<serde_json::Value>,
    },

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition {
            message: message.into(),
            certificate: None,
        }
    }

    pub(crate) fn precondition_with<T: serde::Serialize + ?Sized>(message: impl Into<String>, cert: &T) -> Self {
        Error::Precondition {
            message: message.into(),
            certificate: serde_json::to_value(cert).ok(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

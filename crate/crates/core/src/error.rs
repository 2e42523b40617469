use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6 error at byte {byte}: {message}")]
    Graph6 { byte: usize, message: String },

    #[error("json error: {0}")]
    Json(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("graph is not planar")]
    NonPlanar,

    #[error("triangulation is not 4-connected (separating triangle {0:?})")]
    NotFourConnected([VertexId; 3]),

    #[error("no non-empty triangle to split")]
    NoSeparator,

    #[error("triangle {0:?} does not have an inclusion-minimal interior")]
    MinimalityViolation([VertexId; 3]),

    #[error("decomposition search exhausted: {0}")]
    SearchExhausted(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

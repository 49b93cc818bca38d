use thiserror::Error;

use crate::label::VertexLabel;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),

    #[error("loop edge at {0}")]
    LoopEdge(VertexLabel),

    #[error("edge endpoint {0} is not a vertex")]
    DanglingEdge(VertexLabel),

    #[error("assignment incomplete: vertex {0} is unmapped")]
    AssignmentIncomplete(VertexLabel),

    #[error("image {0} is not a vertex of the codomain")]
    UnknownTarget(VertexLabel),

    #[error("{0} is not a vertex of the domain")]
    UnknownSource(VertexLabel),

    #[error("unknown label {0}")]
    UnknownLabel(VertexLabel),

    #[error("not a sub-digraph")]
    NotSubdigraph,

    #[error("not a digraph map: edge {0} -> {1} is neither collapsed nor preserved")]
    InvalidMap(VertexLabel, VertexLabel),

    #[error("maps do not share a domain")]
    DomainMismatch,

    #[error("maps have different signatures")]
    SignatureMismatch,

    #[error("state budget of {budget} exceeded after {explored} states")]
    BudgetExceeded { budget: usize, explored: usize },

    #[error("search needs homotopies longer than {max_len} steps")]
    LengthExceeded { max_len: usize },

    #[error("start map does not restrict to the first map of the homotopy")]
    RestrictionMismatch,

    #[error("not a subcategory: {0}")]
    NotSubcategory(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("no extension of the classifying map over the tube for test {test}: {f} vs {g}")]
    ExtensionFailed { test: usize, f: String, g: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

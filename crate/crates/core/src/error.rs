use thiserror::Error;

use crate::poly::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {edge} has weight {weight} which is not in the weight list")]
    UnknownWeight { edge: usize, weight: Rational },

    #[error("vertex {vertex} has weight {weight} which is not in the weight list")]
    UnknownVertexWeight { vertex: usize, weight: Rational },

    #[error("no gadget for weight index {0}")]
    MissingGadget(usize),

    #[error("instance too large for exhaustive enumeration: {what} = {size} > {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(Rational),

    #[error("missing value for grid point {0:?}")]
    MissingGridPoint(Vec<usize>),

    #[error("value count {got} does not match grid size {expected}")]
    GridSizeMismatch { expected: usize, got: usize },

    #[error("block capacity must be at least 1")]
    ZeroCapacity,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    pub(crate) fn invalid_graph(msg: impl Into<String>) -> Self {
        Error::InvalidGraph(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}

use thiserror::Error;

use crate::drawing::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge ({0}, {1}) for a drawing on {2} vertices")]
    InvalidEdge(usize, usize, usize),
    #[error("edges {0} and {1} share an endpoint")]
    NotIndependent(Edge, Edge),
    #[error("invalid vertex selection: {0}")]
    InvalidSelection(String),
    #[error("vertex {0} is not certified on the unbounded cell")]
    AnchorUnavailable(usize),
    #[error("drawing carries no rotation system")]
    RotationMissing,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("sign vector has length {got}, expected {expected}")]
    InvalidSigns { expected: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("triple ({0}, {1}, {2}) has color {3:03b}, outside {{000,001,010,100}}")]
    ObservationViolated(usize, usize, usize, u8),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("input is not a tree: {0}")]
    NotATree(String),
    #[error("triple ({0}, {1}, {2}) is not in increasing anchored order")]
    InvalidTriple(usize, usize, usize),
    #[error("drawing has no geometry payload")]
    GeometryMissing,
}

use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a loop")]
    LoopEdge(Vertex),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("a cut shore must be nonempty and proper")]
    EmptyOrFullShore,
    #[error("search budget of {0} items exhausted")]
    BudgetExhausted(u64),
    #[error("graph has no perfect matching")]
    NotMatchable,
    #[error("graph is not matching covered")]
    NotMatchingCovered,
    #[error("invalid perfect matching: {0}")]
    InvalidMatching(String),
    #[error("expected an odd conformal bicycle")]
    WrongParity,
    #[error("cut is trivial")]
    TrivialCut,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph has fewer than four vertices")]
    TooSmall,
    #[error("vertex {0} does not have degree two")]
    NotDegreeTwo(Vertex),
    #[error("both edges at vertex {0} join the same neighbour")]
    ParallelPairAtV(Vertex),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("splice vertices have degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("graph is not a brick")]
    NotABrick,
    #[error("graph is not a simple brick")]
    NotASimpleBrick,
    #[error("reduction stuck: simple brick without strictly thin edge matches no known family")]
    ReductionStuck,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("structural and oracle verdicts disagree: {0}")]
    Disagreement(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

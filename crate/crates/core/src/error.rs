use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not chordal (no perfect elimination ordering), hence not an interval graph")]
    NotChordal,

    #[error("graph is chordal but its maximal cliques admit no consecutive ordering")]
    NotInterval,

    #[error("clique ordering is not consecutive for vertex {vertex}")]
    OrderingNotConsecutive { vertex: usize },

    #[error("more than {cap} orderings to enumerate")]
    CapExceeded { cap: u64 },

    #[error("malformed bit code: {0}")]
    MalformedCode(String),

    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),

    #[error("instance outside the brute-force window: {0}")]
    OutsideWindow(String),

    #[error("annotation does not belong to this graph")]
    StaleAnnotation,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

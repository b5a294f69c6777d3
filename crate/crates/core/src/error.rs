use thiserror::Error;

/// Errors produced by graph construction, the deciders and the parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {required} vertices, got {actual}")]
    TooFewVertices { required: usize, actual: usize },
    #[error("graph has {actual} vertices, above the cap of {cap}")]
    TooLarge { actual: usize, cap: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex subset belongs to a graph on {subset} vertices, host has {host}")]
    HostMismatch { subset: usize, host: usize },
    #[error("part {0} is not a module")]
    NotAModule(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("component graph of base vertex {0} is empty")]
    EmptyComponent(usize),
    #[error("expected {expected} entries for the base graph, got {actual}")]
    IncompleteFamily { expected: usize, actual: usize },
    #[error("operation needs a {0} product")]
    WrongProductKind(&'static str),
    #[error("invalid deletion order: {0}")]
    InvalidOrder(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exhausted before a definite answer")]
    BudgetExceeded,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("partition is not non-increasing at position {0}")]
    NotNonIncreasing(usize),
    #[error("sequence is not sorted in non-increasing order")]
    UnsortedSequence,
    #[error("matrix entry ({row}, {col}) = {value} is not 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: u8 },
    #[error("ragged matrix: row {0} has a different length")]
    RaggedMatrix(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("graph has {0} vertices, at most {max} supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("edge sets are not disjoint")]
    EdgeSetsOverlap,
    #[error("creation sequence is empty")]
    EmptyCreationSequence,
    #[error("Prüfer entry {entry} out of range for tree on {n} vertices")]
    PruferOutOfRange { entry: usize, n: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("canonical form supports at most {max} vertices, got {0}", max = crate::canon::CANONICAL_MAX_VERTICES)]
    CanonicalBound(usize),
    #[error("invalid graph6: {0}")]
    InvalidGraph6(String),
    #[error("invalid edge list: {0}")]
    InvalidEdgeList(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("set of undeleted vertices is empty")]
    EmptyUndeleted,
    #[error("{what} = {value} out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

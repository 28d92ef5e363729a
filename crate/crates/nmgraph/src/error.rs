use thiserror::Error;

/// Errors produced by graph construction and the operations on top of it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: n = {n}, m = {m} (need n + m >= 1 and 2n + m <= 255)")]
    InvalidParams { n: u32, m: u32 },
    #[error("the parameter pair (0,1) is excluded from the order bound")]
    ExcludedParams,
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("vertex {v} out of range for order {order}")]
    VertexOutOfRange { v: usize, order: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("loop requested at vertex {v}")]
    LoopRequested { v: usize },
    #[error("pair ({u},{v}) is already adjacent")]
    DuplicateAdjacency { u: usize, v: usize },
    #[error("vertices must be distinct: {0:?}")]
    NonDistinctVertices(Vec<usize>),
    #[error("graphs have different parameters: ({0},{1}) vs ({2},{3})")]
    ParamsMismatch(u32, u32, u32, u32),
    #[error("mapping is not total on the source: expected {expected} entries, got {got}")]
    MappingNotTotal { expected: usize, got: usize },
    #[error("normalization violated: i = {i} < j = {j}; swap the roles first")]
    NotNormalized { i: u32, j: u32 },
    #[error("pair {{{x},{y}}} does not dominate the graph")]
    NotDominating { x: usize, y: usize },
    #[error("region machinery needs at least 2 common neighbors, got {0}")]
    TooFewCommonNeighbors(usize),
    #[error("({u},{v}) is not a boundary edge of region {region}")]
    NotBoundaryEdge { u: usize, v: usize, region: usize },
    #[error("vertex {z} is not placed in region {region}")]
    NotInRegion { z: usize, region: usize },
    #[error("vertex {z} is not adjacent to both {u} and {v}")]
    NotCommonNeighbor { z: usize, u: usize, v: usize },
    #[error("invalid rotation system: {0}")]
    InvalidRotationSystem(String),
    #[error("invalid search configuration: {0}")]
    InvalidSearchConfig(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A located syntax or semantic error in a `.nmg` stream.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

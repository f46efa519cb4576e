use thiserror::Error;

/// Errors raised by the embedding library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("simplex {simplex:?} repeats vertex {vertex}")]
    DuplicateVertexInSimplex { simplex: Vec<usize>, vertex: usize },
    #[error("vertex index {index} out of range (vertex count {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("no metric value for edge ({0}, {1})")]
    MissingEdgeValue(usize, usize),
    #[error("({0}, {1}) is not an edge of the complex")]
    UnknownEdge(usize, usize),
    #[error("edge ({0}, {1}) given more than one metric value")]
    DuplicateEdgeValue(usize, usize),
    #[error("non-finite value {value} on edge ({i}, {j})")]
    NonFiniteValue { i: usize, j: usize, value: f64 },
    #[error("non-finite scalar {0}")]
    NonFiniteScalar(f64),
    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands live on different complexes")]
    ComplexMismatch,
    #[error("{0:?} is not a simplex of the complex")]
    UnknownSimplex(Vec<usize>),
    #[error("bad barycentric coordinates: {0}")]
    BadBarycentric(&'static str),
    #[error("{subsets} subsets to test exceeds the exhaustive-check limit")]
    CombinatorialBlowup { subsets: u128 },
    #[error("clique cap {cap} must be at least the largest simplex size {needed}")]
    CliqueCapTooSmall { cap: usize, needed: usize },
    #[error("target dimension {got} is below the required {needed}")]
    InsufficientDimension { needed: usize, got: usize },
    #[error("random sampling exhausted {0} retries")]
    RetriesExhausted(usize),
    #[error("solver diverged: {0}")]
    SolverDiverged(String),
    #[error("spanning family is numerically singular (condition {0:e})")]
    SingularFamily(f64),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

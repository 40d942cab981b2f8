use thiserror::Error;

/// Reminder appended to graph-shape errors: users most often get the edge
/// direction backwards.
pub const DIRECTION_HINT: &str = "edges are {id, src, rng}: paths extend at the source end, s(a_i) = r(a_(i+1))";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("empty identifier")]
    EmptyId,
    #[error("dangling endpoint {0} ({hint})", hint = DIRECTION_HINT)]
    DanglingEndpoint(String),
    #[error("duplicate infinite bundle {src} -> {rng}")]
    DuplicateBundle { src: String, rng: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("not enumerable: graph has infinite bundles")]
    NotEnumerable,
    #[error("not a path: s({left}) != r({right}) ({hint})", hint = DIRECTION_HINT)]
    NotAPath { left: String, right: String },
    #[error("cannot concatenate: source {source_vertex} of prefix differs from range {range_vertex} of suffix")]
    ConcatMismatch {
        source_vertex: String,
        range_vertex: String,
    },
    #[error("missing value for vertex {0}")]
    MissingVertex(String),
    #[error("candidate is not an invariant measure: {0}")]
    NotInvariant(String),
    #[error("path {0} does not belong to the boundary level {1}")]
    NotInLevel(String, usize),
    #[error("shift of a length-0 path")]
    ShiftOfVertex,
    #[error("vertex {0} is singular; the covariance relation is only imposed at regular vertices")]
    SingularVertex(String),
    #[error("term violates s(alpha) = s(beta)")]
    InvalidTerm,
    #[error("operands belong to different graphs")]
    CrossGraph,
    #[error("path budget exhausted: level {level} needs more than {budget} paths")]
    BudgetExceeded { level: usize, budget: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

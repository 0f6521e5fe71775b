use thiserror::Error;

use crate::chromatic::PhiFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a complex on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("empty facet in facet list")]
    EmptyFacet,

    #[error("vertex {0} repeated within one simplex")]
    RepeatedVertex(usize),

    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("expected a graph (a complex of dimension at most 1), got dimension {0}")]
    NotAGraph(isize),

    #[error("complex is not pure")]
    NotPure,

    #[error("vertex map is not simplicial: facet {0:?} has image {1:?}, which is not a simplex")]
    NotSimplicial(Vec<usize>, Vec<usize>),

    #[error("vertex map is degenerate on simplex {0:?}")]
    Degenerate(Vec<usize>),

    #[error("vertex map has {0} entries, source has {1} vertices")]
    MapLength(usize, usize),

    #[error("vertex map does not match the complexes it connects")]
    MapMismatch,

    #[error("target complex has {0} vertices; at most 64 are supported")]
    TargetTooLarge(usize),

    #[error("cell cap exceeded: {reached} cells enumerated (cap {cap})")]
    CapExceeded { reached: usize, cap: usize },

    #[error("not a cell of this complex: {0}")]
    NotACell(String),

    #[error("a 0-cell has no facets")]
    ZeroCell,

    #[error("simplex {0:?} is not in the complex")]
    NotASimplex(Vec<usize>),

    #[error("simplices {0:?} and {1:?} are neither equal nor adjacent")]
    NotAdjacent(Vec<usize>, Vec<usize>),

    #[error("cannot compose: {0:?} is not {1:?}")]
    EndpointMismatch(Vec<usize>, Vec<usize>),

    #[error("fold {v} -> {u} is not valid: {reason}")]
    InvalidFold { v: usize, u: usize, reason: String },

    #[error("invalid collapse step: {0}")]
    InvalidCollapse(String),

    #[error("collapse check failed in dimension {dim}: {reason}")]
    CollapseCheck { dim: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("Phi-complex certification failed: {0}")]
    Phi(PhiFailure),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors that come from a violated internal invariant rather than
    /// bad input or a failed hypothesis.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

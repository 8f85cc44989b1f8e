use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {got} vertices (limit {limit})")]
    Capacity { got: usize, limit: usize },
    #[error("vertex {0} is not present in the graph")]
    VertexAbsent(usize),
    #[error("edge {0}-{1} is not present in the graph")]
    EdgeAbsent(usize, usize),
    #[error("vertex set is not contained in the graph")]
    SetNotInGraph,
    #[error("graph has no vertices")]
    NoVertices,
    #[error("graph has no edges")]
    NoEdges,
    #[error("division by zero")]
    DivisionByZero,
    #[error("irrational residue: {0} has a nonzero sqrt5 component")]
    IrrationalResidue(String),
    #[error("set family has no members")]
    EmptyFamily,
    #[error("duplicate member in set family")]
    DuplicateMember,
    #[error("set family member is not a subset of the ground set")]
    MemberOutsideGround,
    #[error("degenerate family: all member cardinalities are equal")]
    DegenerateFamily,
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),
    #[error("{what} out of range: {got} (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// A cross-check between two independent computation routes failed.
    /// Seeing this means the library itself has a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by the whole pipeline.

use thiserror::Error;

/// Everything that can go wrong between parsing a graph and emitting a
/// certificate. Pipeline stages propagate these unchanged so a caller can
/// tell a malformed input from a graph that simply fails a precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("graph is not bipartite: odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<usize> },

    #[error("graph has no perfect matching ({matched} of {needed} vertices covered)")]
    NoPerfectMatching { matched: usize, needed: usize },

    #[error("perfect matching is not unique: alternating cycle {cycle:?}")]
    NotUnique {
        /// One perfect matching, as sorted vertex pairs.
        matching: Vec<(usize, usize)>,
        /// An M-alternating cycle witnessing a second matching.
        cycle: Vec<usize>,
    },

    #[error("pair digraph contains a cycle: {cycle:?}")]
    CycleFound { cycle: Vec<usize> },

    #[error("row/column orders are not permutations of the bipartition parts")]
    OrderMismatch,

    #[error("matrix is not unit lower triangular")]
    NotUnitTriangular,

    #[error("inputs do not triangularize consistently: {0}")]
    NotTriangularizable(String),

    #[error("path statistics require two distinct vertices")]
    SameVertex,

    #[error("flower candidate needs at least 3 vertices, got {0}")]
    SizeTooSmall(usize),

    #[error("not a flower: {0}")]
    NotFlower(NotFlowerReason),

    #[error("switching function is missing vertex {0}")]
    MissingVertex(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("adjacency matrix is singular")]
    Singular,

    #[error("instance too large for the brute-force oracle ({size} > {bound})")]
    TooLarge { size: usize, bound: usize },

    #[error("relation is not acyclic")]
    NotAcyclic,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),
}

/// Why a candidate vertex set failed the flower test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFlowerReason {
    /// Some vertex of the auxiliary graph H does not have degree exactly 2.
    NotTwoRegular { vertex: usize, degree: usize },
    /// H is 2-regular but splits into more than one cycle.
    NotSingleCycle,
}

impl std::fmt::Display for NotFlowerReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotFlowerReason::NotTwoRegular { vertex, degree } => {
                write!(f, "auxiliary graph is not 2-regular (vertex {vertex} has degree {degree})")
            }
            NotFlowerReason::NotSingleCycle => {
                write!(f, "auxiliary graph is 2-regular but not a single cycle")
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

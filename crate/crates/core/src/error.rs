use thiserror::Error;

use crate::dsu::DsuError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The tree violates one of the structural invariants of a phylogenetic tree.
    #[error("invalid tree: {0}")]
    Structure(String),

    /// A distance matrix is malformed (asymmetric, non-positive, wrong size...).
    #[error("invalid distance matrix: {0}")]
    Matrix(String),

    /// A ranking is not a bijection onto `1..=n` over the expected taxa.
    #[error("invalid ranking: {0}")]
    Ranking(String),

    /// A spanning tree does not span the matrix taxa or contains a cycle.
    #[error("invalid spanning tree: {0}")]
    SpanningTree(String),

    /// Two objects expected to share a taxon set do not.
    #[error("taxon sets differ: {0}")]
    TaxonMismatch(String),

    /// An edge query named the same vertex twice.
    #[error("edge endpoints must be distinct, got {0:?} twice")]
    SelfEdge(String),

    /// Edge order handed to plain Kruskal is not a weight-sorted permutation.
    #[error("invalid edge order: {0}")]
    EdgeOrder(String),

    /// Brute-force oracle refused an input above its size guard.
    #[error("input has {n} taxa, oracle limit is {limit}")]
    SizeGuard { n: usize, limit: usize },

    /// Text input could not be parsed.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The reconstruction reached a state that only a non-additive input or an
    /// inconsistent spanning tree can produce.
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    /// A generator or option received an out-of-range value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Reading input or writing output failed.
    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Dsu(#[from] DsuError),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

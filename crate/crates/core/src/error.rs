use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("edge {{{0},{1}}} has zero weight")]
    ZeroWeight(usize, usize),
    #[error("edge {{{a},{b}}} declared with conflicting weights {first} and {second}")]
    DuplicateEdgeConflict {
        a: usize,
        b: usize,
        first: f64,
        second: f64,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair and plus states need two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("vertex {0} appears twice in a state support")]
    RepeatedSupport(usize),
    #[error("edge {{{0},{1}}} is not present")]
    MissingEdge(usize, usize),
    #[error("graph has tails; a truncation depth L > 0 is required")]
    TailsRequireTruncation,
    #[error("tail truncation did not converge below tolerance before L = {cap}")]
    NonConvergent { cap: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error(
        "partition is not equitable: vertices {a} and {a_prime} of cell {cell} send {sum_a} and {sum_a_prime} into cell {target}"
    )]
    NotEquitable {
        cell: usize,
        target: usize,
        a: usize,
        a_prime: usize,
        sum_a: f64,
        sum_a_prime: f64,
    },
    #[error("tail attachment vertex {0} must be a singleton cell")]
    TailAttachNotSingleton(usize),
    #[error("cell constants c[{0}][{1}] and c[{1}][{0}] have opposite signs")]
    SignInconsistency(usize, usize),
    #[error("twin structure violation: {0}")]
    StructureViolation(String),
    #[error("state pair outside the supported overlap cases: {0}")]
    UnsupportedOverlap(String),
    #[error("adjacency matrices do not commute (residual {0:.3e})")]
    CommuteError(f64),
    #[error("edge {{{0},{1}}} is present in both graphs")]
    EdgeOverlap(usize, usize),
    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("operation does not support graphs with tails")]
    TailsUnsupported,
    #[error("connection set is not closed under negation")]
    AsymmetricConnection,
    #[error("connection set contains the identity")]
    IdentityInConnection,
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("unknown gadget `{0}`")]
    UnknownGadget(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("no perfect state transfer: fidelity {fidelity:.12}")]
    NoTransfer { fidelity: f64 },
    #[error("target fidelity not reached: best {best:.12} at t = {time:.12}")]
    Unreached { best: f64, time: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which precondition of the three-face selection failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeFaceClause {
    /// Some pair of faces admits no `a_i`, `a_j` with `‖a_i + a_j‖ = 1`.
    PairwiseUnitSum(usize, usize),
    /// The three faces fit in a closed half-plane bounded by a line through `o`.
    HalfPlane,
    /// A face is not an exposed face of the given ball.
    NotAFace(usize),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unit ball is not centrally symmetric about the origin")]
    NotSymmetric,
    #[error("origin is not an interior point of the unit ball")]
    OriginNotInterior,
    #[error("expected a polygon, got {0}")]
    NotAPolygon(&'static str),
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("angle arm coincides with the vertex")]
    ZeroArm,
    #[error("sites must be pairwise distinct (site {0} repeats site {1})")]
    DuplicateSites(usize, usize),
    #[error("at least {0} sites required")]
    TooFewSites(usize),
    #[error("d-segment endpoints coincide")]
    CoincidentPoints,
    #[error("certificate mode does not match the position of the point")]
    ModeMismatch,
    #[error("precondition violated: {0:?}")]
    PreconditionViolated(ThreeFaceClause),
    #[error("double-cluster search needs an even number of sites, got {0}")]
    OddCardinality(usize),
    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),
    #[error("iteration limit of {0} reached")]
    MaxIterationsExceeded(usize),
    #[error("computation cancelled")]
    Cancelled,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("theorem check failed: {0}")]
    TheoremViolated(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

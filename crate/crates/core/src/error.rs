use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("germ context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid germ context: {0}")]
    InvalidContext(String),

    #[error("index {index} out of range (expected {range})")]
    IndexOutOfRange { index: usize, range: String },

    #[error("not a unit: constant term is zero")]
    NotAUnit,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("resonant configuration: a_{i}(0) = a_{j}(0)")]
    Resonance { i: usize, j: usize },

    #[error("curve is not invariant: {0}")]
    NotInvariant(String),

    #[error("inconclusive at order {order}: {reason}")]
    Inconclusive { order: u32, reason: String },

    #[error("missing stratum data: {0}")]
    MissingStratum(String),

    #[error("inconsistent restrictions on double stratum {0:?}")]
    InconsistentRestriction((usize, usize)),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("could not parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("depth {requested} exceeds the configured cap of {cap}")]
    DepthCap { requested: usize, cap: usize },

    #[error("values may need {needed} bits, but the scalar type holds {available}")]
    Overflow { needed: u64, available: u64 },

    #[error("point {0} is outside the triangle 1 >= x >= y > 0")]
    OutsideTriangle(String),

    #[error("no containing subtriangle found for digits up to {cap}")]
    NoSubtriangle { cap: u64 },

    #[error("vector has zero leading coordinate")]
    ZeroLeadingCoordinate,

    #[error("{0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("prefix of length {got} is too short; need at least {needed}")]
    InsufficientPrefix { needed: usize, got: usize },

    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

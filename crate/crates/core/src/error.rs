use thiserror::Error;

/// Errors raised by every engine in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("ideal is not Artinian: no power of x{0} lies in the ideal")]
    NonArtinian(usize),

    #[error("{what} exceeds the cap of {limit} (got {got})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("Koszul generators: {0}")]
    KoszulGenerators(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("element is not regular: {0}")]
    NotRegular(String),

    #[error("truncation guard: {0}")]
    GuardViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

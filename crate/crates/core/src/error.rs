use thiserror::Error;

/// Errors raised by every layer of the library.
///
/// `kind()` gives the stable machine-readable name used in CLI and FFI output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be greater than 1")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("expected {expected} residues, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("truncation context mismatch: {0}")]
    ContextMismatch(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("{0} has no inverse")]
    NonUnit(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("reduction mod {prime_power} matches none of I2, 0_2 or the trace-one form")]
    ShapeViolation { prime_power: u64 },
    #[error("search space of {required} exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::ModulusMismatch { .. } => "ModulusMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NonUnit(_) => "NonUnit",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::NotIdempotent => "NotIdempotent",
            Error::ShapeViolation { .. } => "ShapeViolation",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

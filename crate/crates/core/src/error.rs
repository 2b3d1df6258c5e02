use thiserror::Error;

/// Errors raised by the exact kernels and the verification layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched coefficient fields")]
    MismatchedFields,
    #[error("insufficient precision: need {required}, have {available}")]
    InsufficientPrecision { required: usize, available: usize },
    #[error("invalid weight {0}: {1}")]
    InvalidWeight(i64, &'static str),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("prime {0} is not admissible here: {1}")]
    BadPrime(u64, &'static str),
    #[error("valence-formula violation: {0}")]
    ValenceViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag, used by the CLI's single-line error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit(_) => "not_a_unit",
            Error::DivisionByZero => "division_by_zero",
            Error::MismatchedFields => "mismatched_fields",
            Error::InsufficientPrecision { .. } => "insufficient_precision",
            Error::InvalidWeight(..) => "invalid_weight",
            Error::ParityMismatch(_) => "parity_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unsupported(_) => "unsupported",
            Error::BadPrime(..) => "bad_prime",
            Error::ValenceViolation(_) => "valence_violation",
            Error::Parse(_) => "parse",
        }
    }
}

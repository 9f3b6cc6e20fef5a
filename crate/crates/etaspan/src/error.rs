//! Error types shared across the crate.

use thiserror::Error;

/// Why a q-expansion could not be recognized as an integer multiple of an
/// eta-quotient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    /// Some coefficient of the input is not divisible by the leading one.
    #[error("coefficient at q^{exponent} is not divisible by the leading coefficient")]
    LeadingDivisibility { exponent: i64 },
    /// The exponent solved for the `index`-th divisor is not an integer.
    #[error("solved exponent for divisor {divisor} (index {index}) is not an integer")]
    NonIntegerExponent { divisor: u64, index: usize },
    /// The reconstructed product disagrees with the input series.
    #[error("verification mismatch at q^{exponent}")]
    Mismatch { exponent: i64 },
    /// The solved exponents give a q-exponent prefactor that is not an
    /// integer power of q, so the series cannot be a single eta-quotient.
    #[error("solved exponents give fractional q-valuation ({twentyfourths}/24)")]
    FractionalValuation { twentyfourths: i64 },
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by the zero series")]
    DivisionByZero,

    /// Raised when a q-expansion is requested for an eta-quotient whose
    /// total q-exponent prefactor is not an integer power of q.
    #[error("fractional valuation: sum of delta*r_delta = {twentyfourths} is not divisible by 24")]
    FractionalValuation { twentyfourths: i64 },

    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    #[error("recognition failure: {0}")]
    Recognition(#[from] RecognitionError),

    /// An internal consistency check failed; this signals a bug, not bad input.
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolation(msg.into())
    }
}

use thiserror::Error;

/// Errors shared across the crate.  Arithmetic panics are reserved for
/// genuine programming errors (e.g. mixing elements of different fields);
/// everything a caller can trigger with legal-looking input comes through
/// here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of the supported range: {0}")]
    TooLarge(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operands have different weights ({0} vs {1})")]
    WeightMismatch(i64, i64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("value is zero to working precision; cannot divide")]
    DivisionByZeroToPrecision,
    #[error("working precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("exponential coefficients supplied only up to alpha_{have}, need alpha_{need}")]
    InsufficientAlphas { have: usize, need: usize },
    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstantTerm,
    #[error("series truncated at order {have}, operation needs order {need}")]
    TruncationUnderflow { have: i64, need: i64 },
    #[error("input series order {have} too small; operator needs order {need}")]
    InsufficientInputOrder { have: i64, need: i64 },
    #[error("operation implemented only for rank {expected}, got rank {got}")]
    RankUnsupported { expected: u32, got: u32 },
    #[error("division point is zero in (K/A)^r")]
    ZeroDivisionPoint,
    #[error("forms are not proportional: {0}")]
    NotProportional(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

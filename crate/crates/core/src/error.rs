use crate::Rational;

/// Errors raised by the kernel. All of them are recoverable: no operation
/// panics on well-formed input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not exactly representable: {0}")]
    NotExactlyRepresentable(String),
    #[error("series has no known leading term (zero, or every term is beyond the truncation order)")]
    ZeroOrUnknownLeadingTerm,
    #[error("leading coefficient must be positive for a non-integer power")]
    NonpositiveLeading,
    #[error("element is not in the valuation ring (valuation {0} < 0)")]
    NotInValuationRing(Rational),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("balls are not strictly nested")]
    NotStrictlyNested,
    #[error("operation requires closed balls")]
    OpenBall,
    #[error("scale must have leading coefficient 1 for non-integer exponents")]
    NonMonicScale,
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("operation requires an exact series (truncation order +inf)")]
    InexactInput,
    #[error("invalid interval: lower endpoint exceeds upper endpoint")]
    InvalidInterval,
    #[error("log level {0} outside 1..={max}", max = crate::logfield::TOWER_DEPTH)]
    LogLevelOutOfRange(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use alloc::string::String;

/// Errors raised by the core toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 2")]
    InvalidDimension(u64),
    #[error("dimension {0} exceeds the supported range for exact primality testing")]
    DimensionTooLarge(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {d}: {reason}")]
    UnsupportedDimension { d: u64, reason: &'static str },
    #[error("wrong angle count: expected {expected}, got {found}")]
    WrongAngleCount { expected: usize, found: usize },
    #[error("component {index} has zero modulus")]
    DegenerateComponent { index: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("shift {a} is not coprime to {p}")]
    ShiftNotCoprime { a: i64, p: u64 },
    #[error("multiplier {m} is not coprime to {d}")]
    MultiplierNotCoprime { m: i64, d: u64 },
    #[error("invariant `{name}` violated: {detail}")]
    InvariantViolation { name: &'static str, detail: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;

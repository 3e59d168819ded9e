use thiserror::Error;

/// Errors raised by the arithmetic, enumeration and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("negative input {0} where a non-negative integer is required")]
    Negative(i64),

    #[error("zero input where a positive integer is required")]
    Zero,

    #[error("{d} is not a fundamental discriminant: {reason}")]
    NotFundamental { d: i64, reason: &'static str },

    #[error("polynomial ({a},{b},{c}) is not primitive (gcd {gcd})")]
    NotPrimitive { a: i64, b: i64, c: i64, gcd: i64 },

    #[error("polynomial ({a},{b},{c}) is reducible: discriminant {disc} is a perfect square")]
    Reducible { a: i64, b: i64, c: i64, disc: i64 },

    #[error("leading coefficient is zero")]
    ZeroLeading,

    #[error("triple ({a},{b},{c}) is not reduced: {reason}")]
    NotReduced {
        a: i64,
        b: i64,
        c: i64,
        reason: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty scan window [{lo}, {hi}] contains no fundamental discriminant")]
    EmptyWindow { lo: i64, hi: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;

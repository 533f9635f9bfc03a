use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {order} exceeds the table limit of {limit} elements")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("element index {index} out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{n} does not divide the unit group order {units}")]
    NoRootOfUnity { n: u64, units: u64 },
    #[error("element {0} is not in the subfield")]
    NotInSubfield(u32),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("{0}")]
    NotADivisor(String),
    #[error("gcd({a}, {b}) = {gcd}, expected 1")]
    NotCoprime { a: u64, b: u64, gcd: u64 },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("family {family} is not admissible at q = {q}: {reason}")]
    Inadmissible {
        family: String,
        q: u64,
        reason: String,
    },
    #[error("code has no root base in the quadratic extension")]
    MissingRootBase,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

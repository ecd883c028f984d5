use thiserror::Error;

/// Errors raised by field, polynomial, character-sum and root-finding operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus not prime: {0}")]
    NotPrime(u64),
    #[error("modulus too large: {0} (must be below 2^62)")]
    ModulusTooLarge(u64),
    #[error("modulus too small: {0} (must be an odd prime)")]
    ModulusTooSmall(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("character of order {order} has no discrete-log table (p = {modulus})")]
    TableMissing { order: u64, modulus: u64 },
    #[error("invalid character order {order} for p = {modulus}")]
    InvalidCharacterOrder { order: u64, modulus: u64 },
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("modulus polynomial must have degree at least 1")]
    ModulusDegreeZero,
    #[error("field too large for enumeration: p = {modulus} exceeds {cap}")]
    FieldTooLarge { modulus: u64, cap: u64 },
    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("degree {degree} is below the required minimum {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("polynomial has no root in the field")]
    NoRoot,
    #[error("set is not {h}-spaced")]
    NotSpaced { h: u64 },
    #[error("{0} is not invertible modulo p")]
    NotInvertible(u64),
    #[error("interval length {h} must lie in [1, p - 1] for p = {modulus}")]
    InvalidInterval { h: u64, modulus: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("shift sweep exhausted at h = {h} without splitting")]
    SweepExhausted { h: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

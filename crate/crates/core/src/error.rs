use thiserror::Error;

/// Errors raised by the sequence-family library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive polynomial for degree {0}")]
    NoPolynomialForDegree(u32),
    #[error("primitivity check failed for degree {degree} polynomial {poly:#x}")]
    PrimitivityCheckFailed { degree: u32, poly: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{degree} does not divide the field degree {n}")]
    DegreeNotDivisor { degree: u32, n: u32 },
    #[error("element is not in the subfield of degree {degree}")]
    NotInSubfield { degree: u32 },
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("gamma must be nonzero")]
    GammaZero,
    #[error("exponent {i} out of range for modulus {modulus}")]
    BadExponent { i: u64, modulus: u64 },
    #[error("gcd({value}, {modulus}) = {gcd} != 1")]
    GcdViolation { value: u64, modulus: u64, gcd: u64 },
    #[error("power sum at t={t} is not in GF(2); index set not closed under doubling")]
    ValueNotBinary { t: u64 },
    #[error("{0} is not a supported Mersenne prime")]
    NotMersennePrime(u64),
    #[error("no decimation of beta reproduces the Legendre sequence")]
    NoMatchingBeta,
    #[error("index set has no element coprime to 2^m-1")]
    NoUnitElement,
    #[error("index {h} out of range for family of size {size}")]
    IndexOutOfRange { h: u64, size: u64 },
    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the number-theoretic and transform layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is even; only odd moduli are supported")]
    EvenModulus(u64),
    #[error("modulus {0} is too small (need an odd integer >= 3)")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("{r1} * {r2} does not equal {n}")]
    BadSplit { n: u64, r1: u64, r2: u64 },
    #[error("{a} is not a unit modulo {modulus}")]
    NotUnit { a: u64, modulus: u64 },
    #[error("character index {index} out of range [0, {order})")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("expected {expected} character indices, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("character is not primitive")]
    NotPrimitive,
    #[error("{l} does not divide {n}")]
    NotDivisor { l: usize, n: usize },
    #[error("primes must satisfy p < q (got p={p}, q={q})")]
    PrimeOrder { p: u64, q: u64 },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("split moduli ({r1}, {r2}) do not match the character components")]
    SplitMismatch { r1: u64, r2: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

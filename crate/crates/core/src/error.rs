use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The evaluation point is not divisible by `p`, so the series is not
    /// evaluated under this crate's contract.
    #[error("v_{p}({t}) = 0; the evaluation point must be divisible by p")]
    NotInDisc { t: String, p: u64 },

    #[error("division by a non-unit modulo {0}")]
    NonUnit(String),

    /// A construction failed its own consistency check.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("partial numerator a_{0} is zero")]
    ZeroPartialNumerator(u32),

    #[error("quadrature did not reach tolerance: {0}")]
    Quadrature(String),

    /// A certificate contradicted a direct p-adic computation.
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),

    #[error("cross-check unresolved up to precision {0}")]
    Unresolved(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

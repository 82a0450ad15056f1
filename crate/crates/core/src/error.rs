//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime > 2")]
    NotPrime(u64),

    #[error("modulus {0} does not fit in 31 bits")]
    ModulusTooLarge(u64),

    #[error("prime {p} too small for these parameters (need p > 4c = {bound})")]
    PrimeTooSmall { p: u64, bound: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("non-differentiable degree: forms of degree < 1 have no partial derivatives")]
    NonDifferentiableDegree,

    #[error("characteristic {p} divides degree {degree}; pick a larger prime")]
    CharDividesDegree { p: u64, degree: i64 },

    #[error("form of degree {degree} must have {expected} coefficients, got {got}")]
    CoefficientLength {
        degree: i64,
        expected: usize,
        got: usize,
    },

    #[error("invalid monad: {0}")]
    InvalidMonad(String),

    #[error("monad generation exhausted {attempts} attempts; last failure: {last_failure}")]
    RetriesExhausted { attempts: u32, last_failure: String },

    #[error("display exactness violated: {0}")]
    DisplayExactness(String),

    #[error("non-generic pair (common factor?): image rank {rank} != closed form {closed}")]
    NonGenericPair { rank: usize, closed: i64 },
}

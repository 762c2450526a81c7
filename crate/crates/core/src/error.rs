use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// Variants marked "internal" signal a broken invariant; they exist so that a
/// bug surfaces as a structured error with a witness instead of a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("scalars over different primes ({0} vs {1})")]
    MixedPrimes(u64, u64),

    #[error("quadratic extensions differ: (p, a_p) = ({0}, {1}) vs ({2}, {3})")]
    MixedExtension(u64, i64, u64, i64),

    #[error("(p, a_p) = ({p}, {ap}) is not a supersingular pair")]
    NotSupersingular { p: u64, ap: i64 },

    #[error("internal: coefficient y_{i} is not integral")]
    NonIntegralCoefficient { i: i64 },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("limit did not stabilise after level {level}: {detail}")]
    NotConverged { level: usize, detail: String },

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("internal: Hasse bound violated (a_p = {ap}, p = {p})")]
    HasseViolation { p: u64, ap: i64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Domain errors are the ones a caller can provoke with well-formed but
    /// unsuitable input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotSupersingular { .. }
                | Error::InexactDivision(_)
                | Error::BadReduction(_)
                | Error::NonPrimeModulus(_)
                | Error::DivisionByZero
                | Error::NotConverged { .. }
                | Error::PrecisionExhausted(_)
                | Error::MixedPrimes(..)
                | Error::MixedExtension(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

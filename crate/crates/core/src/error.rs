use thiserror::Error;

/// Errors raised by the arithmetic kernels and the verification drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("{0} is not a rational prime")]
    NotPrime(u64),

    #[error("{p} is {class:?}, expected a split prime")]
    NotSplit { p: u64, class: crate::PrimeClass },

    #[error("{what}: {value} exceeds the bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("tail estimate {tail:e} exceeds {limit:e}; raise the prime cutoff")]
    Nonconvergent { tail: f64, limit: f64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

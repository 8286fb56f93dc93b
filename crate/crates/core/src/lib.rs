//! Multidimensional exponential divisor functions over ℤ and ℤ[i].
//!
//! The four families `τₖ⁽ᵉ⁾`, `τₖ*⁽ᵉ⁾`, `𝔱ₖ⁽ᵉ⁾`, `𝔱ₖ*⁽ᵉ⁾` act on prime-power
//! exponents through the base functions `τₖ` (ordered factorizations in ℤ)
//! and `𝔱ₖ` (ordered factorizations into associate classes of ℤ[i]). The
//! crate evaluates them, checks their Dirichlet-series factorizations by
//! exact power-series algebra, computes the Euler-product constants of their
//! average orders, and measures summatory and maximal-order behaviour.

pub mod bell;
pub mod champions;
pub mod constants;
pub mod divisors;
pub mod error;
pub mod gaussint;
pub mod primes;
pub mod scalar;
mod segmented;
pub mod summing;
pub mod verify;

pub use bell::{TruncatedSeries, ZetaBase, ZetaFactorization};
pub use divisors::{Argument, BaseFunction, FamilyKind, FunctionFamily};
pub use error::{Error, Result};
pub use gaussint::{Gaussian, Unit};
pub use primes::{GaussFactorization, PrimeClass, RationalFactorization};

/// Gaussian integers with 64-bit components, the working type everywhere.
pub type GaussInt = Gaussian<i64>;

/// Exact power series over `i128`; overflow is reported, never wrapped.
pub type Series = TruncatedSeries<i128>;
pub type Real = f64;

//! Rational and Gaussian primes.

mod gaussian;
mod rational;

pub use gaussian::{
    classify, factor_gauss, gaussian_primes_up_to, is_gaussian_prime, split_partner, split_prime,
    GaussFactorization, GaussianPrimes, PrimeClass,
};
pub use rational::{factor_rational, is_prime, primes_up_to, RationalFactorization, SpfTable};

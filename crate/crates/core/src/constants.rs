//! Euler-product constants of the average orders, and real zeta values.
//!
//! For a family whose Bell series is `∑ base(a) xᵃ` at every prime, the
//! leading constant of the summatory function is
//!
//! * over ℤ: `∏_p (1 + ∑_{a≥2} (base(a) - base(a-1)) p^{-a})`,
//! * over ℤ[i]: `(π/4) ∏_𝔭 (1 + ∑_{a≥2} (base(a) - base(a-1)) N(𝔭)^{-a})`,
//!
//! the `π/4` being the residue of the Hecke zeta function at `s = 1`. The
//! Gaussian product is regrouped by rational primes as
//! `g(2) · ∏_{p≡1(4)} g(p)² · ∏_{p≡3(4)} g(p²)`.
//!
//! Factors are accumulated as compensated sums of `ln(1 + (g - 1))` over
//! fixed-size prime chunks, so the result does not depend on thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::divisors::{BaseFunction, FamilyKind};
use crate::error::{Error, Result};
use crate::primes::{primes_up_to, PrimeClass};
use crate::scalar::{real, CompensatedSum, RealScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConstantKind {
    /// Leading constant of `∑′ 𝔱ₖ⁽ᵉ⁾(α)` over `N(α) <= x`.
    C,
    /// Leading constant of `∑′ 𝔱ₖ*⁽ᵉ⁾(α)`.
    CStar,
    /// Leading constant of `∑ τₖ*⁽ᵉ⁾(n)`.
    A,
    /// Leading constant of `∑ τₖ⁽ᵉ⁾(n)`.
    B,
}

impl ConstantKind {
    pub const ALL: [ConstantKind; 4] = [
        ConstantKind::C,
        ConstantKind::CStar,
        ConstantKind::A,
        ConstantKind::B,
    ];

    pub fn for_family(kind: FamilyKind) -> Self {
        match kind {
            FamilyKind::FrakTEK => ConstantKind::C,
            FamilyKind::FrakTEKStar => ConstantKind::CStar,
            FamilyKind::TauEKStar => ConstantKind::A,
            FamilyKind::TauEK => ConstantKind::B,
        }
    }

    pub fn is_gaussian(self) -> bool {
        matches!(self, ConstantKind::C | ConstantKind::CStar)
    }

    pub fn base(self) -> BaseFunction {
        match self {
            ConstantKind::C | ConstantKind::B => BaseFunction::TauK,
            ConstantKind::CStar | ConstantKind::A => BaseFunction::FrakTK,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstantKind::C => "C",
            ConstantKind::CStar => "Cstar",
            ConstantKind::A => "A",
            ConstantKind::B => "B",
        }
    }
}

impl fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected C, Cstar, A or B".into(),
            })
    }
}

/// Cutoff and truncation of an Euler-product evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductConfig {
    /// Rational primes `p <= prime_cutoff` contribute.
    pub prime_cutoff: u64,
    /// Local series run over `a = 2..=truncation`.
    pub truncation: usize,
    /// Largest acceptable tail estimate.
    pub max_tail: f64,
}

impl Default for ProductConfig {
    fn default() -> Self {
        Self {
            prime_cutoff: 1_000_000,
            truncation: 64,
            max_tail: 1e-6,
        }
    }
}

impl ProductConfig {
    pub fn with_cutoff(prime_cutoff: u64) -> Self {
        Self {
            prime_cutoff,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProductResult<F> {
    pub value: F,
    pub prime_cutoff: u64,
    pub series_truncation: usize,
    /// Modelled size of the omitted primes' contribution (relative).
    pub tail_estimate: F,
}

const CHUNK: usize = 4096;

/// `base(a) - base(a-1)` for `a = 0..=truncation` (entries 0 and 1 unused).
fn differences<F: RealScalar>(base: BaseFunction, k: u32, truncation: usize) -> Result<Vec<F>> {
    let t = base.table(k, truncation as u64)?;
    Ok((0..=truncation)
        .map(|a| {
            if a < 2 {
                F::zero()
            } else {
                real::<F>(t[a] as f64) - real::<F>(t[a - 1] as f64)
            }
        })
        .collect())
}

/// `g(y) - 1 = ∑_{a=2}^{A} d_a y^{-a}` by Horner's rule in `1/y`.
fn local_correction<F: RealScalar>(diffs: &[F], y: F) -> F {
    let t = y.recip();
    let mut h = F::zero();
    for d in diffs[2..].iter().rev() {
        h = h * t + *d;
    }
    h * t * t
}

/// `ln` of the aggregated local factor of all primes above `p`.
fn log_local<F: RealScalar>(kind: ConstantKind, diffs: &[F], p: u64) -> F {
    let y = real::<F>(p as f64);
    if !kind.is_gaussian() {
        return local_correction(diffs, y).ln_1p();
    }
    match PrimeClass::of_prime_unchecked(p) {
        PrimeClass::Ramified => local_correction(diffs, y).ln_1p(),
        PrimeClass::Split => (F::one() + F::one()) * local_correction(diffs, y).ln_1p(),
        PrimeClass::Inert => local_correction(diffs, y * y).ln_1p(),
    }
}

/// The aggregated local factor at the rational prime `p`: `g(2)`, `g(p)²` for
/// split `p`, `g(p²)` for inert `p` (Gaussian kinds), or `g(p)` (rational).
pub fn local_factor<F: RealScalar>(
    kind: ConstantKind,
    k: u32,
    p: u64,
    truncation: usize,
) -> Result<F> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if truncation < 2 {
        return Err(Error::Domain("series truncation must be at least 2".into()));
    }
    let diffs = differences::<F>(kind.base(), k, truncation)?;
    Ok(log_local(kind, &diffs, p).exp())
}

/// Compensated `∑ ln(local factor)` over the given primes, in the given order.
pub fn log_euler_sum<F: RealScalar>(
    kind: ConstantKind,
    k: u32,
    primes: &[u64],
    truncation: usize,
) -> Result<F> {
    let diffs = differences::<F>(kind.base(), k, truncation)?;
    Ok(primes
        .iter()
        .map(|&p| log_local(kind, &diffs, p))
        .collect::<CompensatedSum<F>>()
        .value())
}

/// Tail model `c / (P ln P)` with `c = |base(2) - base(1)|`: the omitted
/// factors are `1 + c/p² + …` over all `p > P` (rational), or squared over
/// the split half of them (Gaussian), and `∑_{p>P} p⁻² ≈ 1/(P ln P)`.
pub fn tail_estimate(kind: ConstantKind, k: u32, prime_cutoff: u64) -> Result<f64> {
    let b = kind.base();
    let c = (b.value(k, 2)? as f64 - b.value(k, 1)? as f64).abs();
    let p = prime_cutoff as f64;
    Ok(c / (p * p.ln()))
}

/// Smallest power of ten `>= 10⁶` whose tail estimate is below `10⁻⁶`.
pub fn default_cutoff(kind: ConstantKind, k: u32) -> Result<u64> {
    let mut cutoff = 1_000_000u64;
    while tail_estimate(kind, k, cutoff)? > ProductConfig::default().max_tail {
        cutoff = cutoff.checked_mul(10).ok_or(Error::Overflow("prime cutoff"))?;
    }
    Ok(cutoff)
}

/// Evaluates the Euler product for `kind` at `k` (`k = 1` gives the
/// indicator function: every local factor is 1).
pub fn compute_constant<F: RealScalar>(
    kind: ConstantKind,
    k: u32,
    config: &ProductConfig,
) -> Result<EulerProductResult<F>> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if config.prime_cutoff < 100 {
        return Err(Error::Domain("prime cutoff must be at least 100".into()));
    }
    if config.truncation < 2 {
        return Err(Error::Domain("series truncation must be at least 2".into()));
    }
    let tail = tail_estimate(kind, k, config.prime_cutoff)?;
    if tail > config.max_tail {
        return Err(Error::Nonconvergent {
            tail,
            limit: config.max_tail,
        });
    }
    let diffs = differences::<F>(kind.base(), k, config.truncation)?;
    let primes = primes_up_to(config.prime_cutoff);
    let partials: Vec<CompensatedSum<F>> = primes
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(|&p| log_local(kind, &diffs, p)).collect())
        .collect();
    let mut total = CompensatedSum::new();
    for part in &partials {
        total.merge(part);
    }
    let product = total.value().exp();
    // π/4 is the residue of Z(s) at s = 1
    let value = if kind.is_gaussian() {
        F::FRAC_PI_4() * product
    } else {
        product
    };
    Ok(EulerProductResult {
        value,
        prime_cutoff: config.prime_cutoff,
        series_truncation: config.truncation,
        tail_estimate: real(tail),
    })
}

/// The leading constant for a family, at its default cutoff.
pub fn main_term_constant(kind: FamilyKind, k: u32) -> Result<EulerProductResult<f64>> {
    let which = ConstantKind::for_family(kind);
    compute_constant(which, k, &ProductConfig::with_cutoff(default_cutoff(which, k)?))
}

const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `ζ(s)` for `s = 1/2` or `s > 1`, by Euler–Maclaurin summation with 20
/// explicit terms and ten Bernoulli corrections.
pub fn zeta_real<F: RealScalar>(s: F) -> Result<F> {
    let half = real::<F>(0.5);
    if !(s == half || s > F::one()) {
        return Err(Error::Domain(format!(
            "zeta_real supports s = 1/2 or s > 1, got {s:?}"
        )));
    }
    const N: u32 = 20;
    let n = real::<F>(f64::from(N));
    let mut sum: CompensatedSum<F> = (1..N).map(|m| real::<F>(f64::from(m)).powf(-s)).collect();
    sum.add(n.powf(F::one() - s) / (s - F::one()));
    sum.add(half * n.powf(-s));
    // B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}
    let mut rising = s;
    let mut factorial = real::<F>(2.0);
    let mut power = n.powf(-s - F::one());
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j as f64 + 1.0;
        sum.add(real::<F>(*b) / factorial * rising * power);
        rising = rising * (s + real(2.0 * j - 1.0)) * (s + real(2.0 * j));
        factorial = factorial * real(2.0 * j + 1.0) * real(2.0 * j + 2.0);
        power = power / (n * n);
    }
    Ok(sum.value())
}

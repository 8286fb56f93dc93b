//! The base counting functions `τₖ`, `𝔱ₖ` and the four exponential families.
//!
//! `τₖ(n)` counts ordered k-tuples of positive integers with product `n`.
//! `𝔱ₖ(α)` counts ordered k-tuples of associate classes of ℤ[i] whose product
//! is the class of `α`; on a rational integer it is given by the local rules
//!
//! * `𝔱ₖ(2ᵃ) = C(k+2a-1, 2a)` (2 is a unit times `(1+i)²`),
//! * `𝔱ₖ(pᵃ) = C(k+a-1, a)` for `p ≡ 3 (mod 4)`,
//! * `𝔱ₖ(pᵃ) = C(k+a-1, a)²` for `p ≡ 1 (mod 4)`.
//!
//! The exponential families apply one of these to every prime exponent:
//! `τₖ⁽ᵉ⁾(pᵃ) = τₖ(a)`, `τₖ*⁽ᵉ⁾(pᵃ) = 𝔱ₖ(a)`, `𝔱ₖ⁽ᵉ⁾(𝔭ᵃ) = τₖ(a)`,
//! `𝔱ₖ*⁽ᵉ⁾(𝔭ᵃ) = 𝔱ₖ(a)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{factor_gauss, factor_rational, PrimeClass, RationalFactorization, SpfTable};
use crate::GaussInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    /// `τₖ⁽ᵉ⁾` on ℤ.
    TauEK,
    /// `τₖ*⁽ᵉ⁾` on ℤ.
    TauEKStar,
    /// `𝔱ₖ⁽ᵉ⁾` on ℤ[i].
    FrakTEK,
    /// `𝔱ₖ*⁽ᵉ⁾` on ℤ[i].
    FrakTEKStar,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::TauEK,
        FamilyKind::TauEKStar,
        FamilyKind::FrakTEK,
        FamilyKind::FrakTEKStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::TauEK => "tau_e_k",
            FamilyKind::TauEKStar => "tau_e_k_star",
            FamilyKind::FrakTEK => "frak_t_e_k",
            FamilyKind::FrakTEKStar => "frak_t_e_k_star",
        }
    }

    pub fn is_gaussian(self) -> bool {
        matches!(self, FamilyKind::FrakTEK | FamilyKind::FrakTEKStar)
    }

    /// The exponent-level function the family applies.
    pub fn base(self) -> BaseFunction {
        match self {
            FamilyKind::TauEK | FamilyKind::FrakTEK => BaseFunction::TauK,
            FamilyKind::TauEKStar | FamilyKind::FrakTEKStar => BaseFunction::FrakTK,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected tau_e_k, tau_e_k_star, frak_t_e_k or frak_t_e_k_star".into(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BaseFunction {
    TauK,
    FrakTK,
}

impl BaseFunction {
    /// `τₖ(a)` or `𝔱ₖ(a)` on a natural number, with the value 1 at `a = 0`.
    pub fn value(self, k: u32, a: u64) -> Result<u64> {
        if a == 0 {
            return Ok(1);
        }
        match self {
            BaseFunction::TauK => tau_k(k, a),
            BaseFunction::FrakTK => frak_t_k_rational(k, a),
        }
    }

    /// Values at `0..=max_a`.
    pub fn table(self, k: u32, max_a: u64) -> Result<Vec<u64>> {
        (0..=max_a).map(|a| self.value(k, a)).collect()
    }
}

/// One of the four families at a fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FunctionFamily {
    pub kind: FamilyKind,
    pub k: u32,
}

impl FunctionFamily {
    pub fn new(kind: FamilyKind, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("k must be at least 2, got {k}")));
        }
        Ok(Self { kind, k })
    }

    /// The constant function 1 on ℤ[i], written as `𝔱₁⁽ᵉ⁾` since `τ₁ ≡ 1`.
    /// Summing it counts associate classes by norm.
    pub fn gaussian_indicator() -> Self {
        Self {
            kind: FamilyKind::FrakTEK,
            k: 1,
        }
    }

    pub fn base(&self) -> BaseFunction {
        self.kind.base()
    }

    pub fn is_gaussian(&self) -> bool {
        self.kind.is_gaussian()
    }

    pub fn base_value(&self, a: u64) -> Result<u64> {
        self.base().value(self.k, a)
    }

    pub fn base_table(&self, max_a: u64) -> Result<Vec<u64>> {
        self.base().table(self.k, max_a)
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={})", self.kind, self.k)
    }
}

/// `C(n, r)` by incremental multiplication; each partial product is itself a
/// binomial so the division is exact.
pub fn binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for i in 0..r {
        c = c * u128::from(n - i) / u128::from(i + 1);
        if c > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(c as u64)
}

fn product(values: impl IntoIterator<Item = Result<u64>>) -> Result<u64> {
    values.into_iter().try_fold(1u64, |acc, v| {
        acc.checked_mul(v?).ok_or(Error::Overflow("multiplicative product"))
    })
}

/// `τₖ(pᵃ) = C(k+a-1, a)`.
pub fn tau_k_prime_power(k: u32, a: u32) -> Result<u64> {
    binomial(u64::from(k) + u64::from(a) - 1, u64::from(a))
}

/// Local value of `𝔱ₖ` at the rational prime power `pᵃ`.
pub fn frak_t_k_prime_power(k: u32, p: u64, a: u32) -> Result<u64> {
    match PrimeClass::of_prime_unchecked(p) {
        PrimeClass::Ramified => tau_k_prime_power(k, 2 * a),
        PrimeClass::Inert => tau_k_prime_power(k, a),
        PrimeClass::Split => {
            let c = tau_k_prime_power(k, a)?;
            c.checked_mul(c).ok_or(Error::Overflow("frak_t_k"))
        }
    }
}

pub(crate) fn tau_k_of(k: u32, f: &RationalFactorization) -> Result<u64> {
    product(f.iter().map(|(_, a)| tau_k_prime_power(k, a)))
}

pub(crate) fn frak_t_k_of(k: u32, f: &RationalFactorization) -> Result<u64> {
    product(f.iter().map(|(p, a)| frak_t_k_prime_power(k, p, a)))
}

pub fn tau_k(k: u32, n: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    tau_k_of(k, &factor_rational(n)?)
}

/// `𝔱ₖ(n)` for a rational integer `n >= 1`, via the three local rules.
pub fn frak_t_k_rational(k: u32, n: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    frak_t_k_of(k, &factor_rational(n)?)
}

/// `𝔱ₖ(α)` for a nonzero Gaussian integer: `τₖ` of ℤ[i], multiplicative over
/// its prime factorization.
pub fn frak_t_k(k: u32, alpha: &GaussInt) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let f = factor_gauss(alpha)?;
    product(f.exponents().map(|a| tau_k_prime_power(k, a)))
}

/// Argument of a family: a positive integer or a nonzero Gaussian integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Argument {
    Rational(u64),
    Gaussian(GaussInt),
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Argument::Rational(n) => write!(f, "{n}"),
            Argument::Gaussian(z) => write!(f, "{z}"),
        }
    }
}

/// Evaluates a family at an argument of the matching domain.
pub fn eval(fam: &FunctionFamily, arg: &Argument) -> Result<u64> {
    let base = fam.base();
    let k = fam.k;
    match (fam.is_gaussian(), arg) {
        (false, Argument::Rational(n)) => {
            let f = factor_rational(*n)?;
            product(f.iter().map(|(_, a)| base.value(k, u64::from(a))))
        }
        (true, Argument::Gaussian(z)) => {
            let f = factor_gauss(z)?;
            product(f.exponents().map(|a| base.value(k, u64::from(a))))
        }
        (gaussian, _) => Err(Error::Domain(format!(
            "{} takes {} arguments, got {arg}",
            fam.kind,
            if gaussian { "Gaussian" } else { "rational" }
        ))),
    }
}

/// Limits for the brute-force oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleBounds {
    pub max_norm: u64,
    pub max_k: u32,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self {
            max_norm: 10_000,
            max_k: 4,
        }
    }
}

fn check_oracle_bounds(k: u32, size: u64, limit: u64, bounds: OracleBounds) -> Result<()> {
    if k == 0 || k > bounds.max_k {
        return Err(Error::BoundExceeded {
            what: "oracle k",
            value: u64::from(k),
            limit: u64::from(bounds.max_k),
        });
    }
    if size > limit {
        return Err(Error::BoundExceeded {
            what: "oracle argument",
            value: size,
            limit,
        });
    }
    Ok(())
}

/// Counts ordered k-tuples of divisor classes with product in the class of
/// `alpha` by direct enumeration. The divisor classes are found by scanning
/// the lattice quarter plane; nothing here uses prime factorization.
pub fn brute_force_frak_t_k(k: u32, alpha: &GaussInt, bounds: OracleBounds) -> Result<u64> {
    if alpha.is_zero() {
        return Err(Error::Domain("argument must be nonzero".into()));
    }
    let n = alpha.norm()?;
    check_oracle_bounds(k, n as u64, bounds.max_norm, bounds)?;
    let side = (n as f64).sqrt() as i64 + 1;
    let mut classes = Vec::new();
    for a in 1..=side {
        for b in 0..=side {
            let d = GaussInt::new(a, b);
            let nd = d.norm()?;
            if nd <= n && n % nd == 0 && d.divides(alpha)? {
                classes.push(d);
            }
        }
    }
    fn count(k: u32, beta: &GaussInt, classes: &[GaussInt]) -> Result<u64> {
        if k == 1 {
            return Ok(1);
        }
        let mut total = 0;
        for d in classes {
            if d.divides(beta)? {
                total += count(k - 1, &beta.divide_exact(d)?, classes)?;
            }
        }
        Ok(total)
    }
    count(k, alpha, &classes)
}

/// Counts ordered k-tuples of positive integers with product `n` by nested
/// divisor enumeration.
pub fn brute_force_tau_k(k: u32, n: u64) -> Result<u64> {
    const LIMIT: u64 = 1_000_000;
    check_oracle_bounds(
        k,
        n,
        LIMIT,
        OracleBounds {
            max_norm: LIMIT,
            max_k: 4,
        },
    )?;
    if n == 0 {
        return Err(Error::Domain("argument must be positive".into()));
    }
    fn count(k: u32, n: u64) -> u64 {
        if k == 1 {
            return 1;
        }
        (1..=n).filter(|d| n % d == 0).map(|d| count(k - 1, n / d)).sum()
    }
    Ok(count(k, n))
}

/// Scans `n = 1..=n_max` for the maximum of `log f(n) / n`, `f` the base
/// function at `k`. Returns the first maximizer and the maximum.
pub fn max_log_ratio(base: BaseFunction, k: u32, n_max: u64) -> Result<(u64, f64)> {
    if n_max < 2 {
        return Err(Error::Domain("n_max must be at least 2".into()));
    }
    let limit = u32::try_from(n_max).map_err(|_| Error::BoundExceeded {
        what: "max_log_ratio scan",
        value: n_max,
        limit: u64::from(u32::MAX),
    })?;
    let spf = SpfTable::new(limit);
    let mut best = (1u64, 0.0f64);
    for n in 2..=n_max {
        let f = spf.factor(n)?;
        let v = match base {
            BaseFunction::TauK => tau_k_of(k, &f)?,
            BaseFunction::FrakTK => frak_t_k_of(k, &f)?,
        };
        let r = (v as f64).ln() / n as f64;
        if r > best.1 {
            best = (n, r);
        }
    }
    Ok(best)
}

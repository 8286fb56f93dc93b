//! Summatory functions of the four families, with lattice-enumeration
//! oracles and main-term residuals.
//!
//! Gaussian sums `∑′_{N(α)<=x} f(α)` are computed through the norm
//! coefficients `b(n) = ∑′_{N(α)=n} f(α)`, which form a multiplicative
//! function of `n` with local values
//!
//! * `b(2ᵃ) = base(a)` (the single class `(1+i)ᵃ`),
//! * `b(pᵃ) = base(a/2)` for inert `p` and even `a`, else 0,
//! * `b(pᵃ) = ∑_{i+j=a} base(i)·base(j)` for split `p`.

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::main_term_constant;
use crate::divisors::{eval, Argument, FunctionFamily};
use crate::error::{Error, Result};
use crate::primes::{PrimeClass, SpfTable};
use crate::segmented::map_segments;
use crate::GaussInt;

/// Largest prime exponent that occurs below 2⁶⁴.
const MAX_EXPONENT: usize = 64;

/// Prime-power values of a multiplicative function of `n`, tabulated per
/// prime class.
#[derive(Debug, Clone)]
pub(crate) struct LocalRule {
    gaussian: bool,
    base: Vec<u64>,
    split: Vec<u64>,
}

impl LocalRule {
    fn build(fam: &FunctionFamily, combine: impl Fn(&[u64], usize) -> Result<u64>) -> Result<Self> {
        let base = fam.base_table(MAX_EXPONENT as u64)?;
        let split = if fam.is_gaussian() {
            (0..=MAX_EXPONENT).map(|a| combine(&base, a)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok(Self {
            gaussian: fam.is_gaussian(),
            base,
            split,
        })
    }

    /// Norm coefficients `b(n)` (Gaussian) or the family itself (rational).
    pub(crate) fn norm_sum(fam: &FunctionFamily) -> Result<Self> {
        Self::build(fam, |b, a| {
            (0..=a).try_fold(0u64, |acc, i| {
                b[i].checked_mul(b[a - i])
                    .and_then(|v| acc.checked_add(v))
                    .ok_or(Error::Overflow("split local value"))
            })
        })
    }

    /// Largest value over the classes of norm `n` (0 if there are none).
    pub(crate) fn norm_max(fam: &FunctionFamily) -> Result<Self> {
        Self::build(fam, |b, a| {
            (0..=a).try_fold(0u64, |acc, i| {
                b[i].checked_mul(b[a - i])
                    .map(|v| acc.max(v))
                    .ok_or(Error::Overflow("split local value"))
            })
        })
    }

    pub(crate) fn value(&self, p: u64, e: u32) -> u64 {
        let e = e as usize;
        if !self.gaussian {
            return self.base[e];
        }
        match PrimeClass::of_prime_unchecked(p) {
            PrimeClass::Ramified => self.base[e],
            PrimeClass::Inert if e % 2 == 1 => 0,
            PrimeClass::Inert => self.base[e / 2],
            PrimeClass::Split => self.split[e],
        }
    }
}

/// `b(n)` for `1 <= n <= x`.
#[derive(Debug, Clone, Serialize)]
pub struct NormCoefficientTable {
    pub family: FunctionFamily,
    pub x: u64,
    /// `b[n]` for `n = 0..=x`, with `b[0] = 0`.
    pub b: Vec<u64>,
}

impl NormCoefficientTable {
    pub fn get(&self, n: u64) -> Option<u64> {
        (n >= 1 && n <= self.x).then(|| self.b[n as usize])
    }

    pub fn total(&self) -> Result<u64> {
        checked_total(self.b.iter().copied())
    }
}

fn checked_total(values: impl IntoIterator<Item = u64>) -> Result<u64> {
    values
        .into_iter()
        .try_fold(0u64, |acc, v| acc.checked_add(v).ok_or(Error::Overflow("summatory total")))
}

/// Largest table [`norm_coefficients`] will allocate.
pub const MAX_TABLE: u64 = 200_000_000;

pub fn norm_coefficients(fam: &FunctionFamily, x: u64) -> Result<NormCoefficientTable> {
    if !fam.is_gaussian() {
        return Err(Error::Domain(format!("{} is not a Gaussian family", fam.kind)));
    }
    if x < 1 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    if x > MAX_TABLE {
        return Err(Error::BoundExceeded {
            what: "norm coefficient table",
            value: x,
            limit: MAX_TABLE,
        });
    }
    let rule = LocalRule::norm_sum(fam)?;
    let parts = map_segments(x, &|p, e| rule.value(p, e), |_, v| Ok(v.to_vec()))?;
    let mut b = Vec::with_capacity(x as usize + 1);
    b.push(0);
    for part in parts {
        b.extend(part);
    }
    Ok(NormCoefficientTable {
        family: *fam,
        x,
        b,
    })
}

/// Exact summatory value, main term and residual at one `x`.
#[derive(Debug, Clone, Serialize)]
pub struct SummatoryReport {
    pub family: FunctionFamily,
    pub x: u64,
    pub exact_sum: u64,
    /// Leading constant (`A_k`, `C_k`, …) used for the main term.
    pub constant: f64,
    pub constant_cutoff: u64,
    pub main_term: f64,
    pub residual: f64,
    /// `residual / √x`.
    pub normalized_residual: f64,
}

impl SummatoryReport {
    fn new(family: FunctionFamily, x: u64, exact_sum: u64, constant: f64, cutoff: u64) -> Self {
        let main_term = constant * x as f64;
        let residual = exact_sum as f64 - main_term;
        Self {
            family,
            x,
            exact_sum,
            constant,
            constant_cutoff: cutoff,
            main_term,
            residual,
            normalized_residual: residual / (x as f64).sqrt(),
        }
    }
}

/// `∑_{n<=x} f(n)` (rational families) or `∑′_{N(α)<=x} f(α)` (Gaussian
/// families), exactly, by the segmented sieve.
pub fn exact_summatory(fam: &FunctionFamily, x: u64) -> Result<u64> {
    let rule = LocalRule::norm_sum(fam)?;
    let parts = map_segments(x, &|p, e| rule.value(p, e), |_, v| checked_total(v.iter().copied()))?;
    checked_total(parts)
}

pub fn summatory(fam: &FunctionFamily, x: u64) -> Result<SummatoryReport> {
    if x < 1 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let constant = main_term_constant(fam.kind, fam.k)?;
    let exact = exact_summatory(fam, x)?;
    Ok(SummatoryReport::new(
        *fam,
        x,
        exact,
        constant.value,
        constant.prime_cutoff,
    ))
}

/// Bound on the oracle's `x`.
pub const ORACLE_LIMIT: u64 = 1_000_000;

/// Sums the family by enumerating arguments directly: canonical lattice
/// points `a >= 1, b >= 0, a² + b² <= x` (Gaussian), or `n <= x`, each
/// factored and evaluated on its own.
pub fn lattice_summatory_oracle(fam: &FunctionFamily, x: u64) -> Result<u64> {
    if x > ORACLE_LIMIT {
        return Err(Error::BoundExceeded {
            what: "lattice oracle",
            value: x,
            limit: ORACLE_LIMIT,
        });
    }
    if !fam.is_gaussian() {
        let parts: Vec<u64> = (1..=x)
            .into_par_iter()
            .map(|n| eval(fam, &Argument::Rational(n)))
            .collect::<Result<_>>()?;
        return checked_total(parts);
    }
    let x = x as i64;
    let side = (x as f64).sqrt() as i64 + 1;
    let rows: Vec<u64> = (1..=side)
        .into_par_iter()
        .map(|a| {
            let mut row = 0u64;
            let mut b = 0;
            while a * a + b * b <= x {
                row += eval(fam, &Argument::Gaussian(GaussInt::new(a, b)))?;
                b += 1;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    checked_total(rows)
}

/// `T(l; x)`: the number of tuples `(d₀, d₁, …, d_l)` of positive integers
/// with `d₀·d₁²⋯d_l² <= x`, as `∑_{m<=√x} τ_l(m)·⌊x/m²⌋`.
pub fn count_tau_a(l: u32, x: u64) -> Result<u64> {
    if !(1..=4).contains(&l) {
        return Err(Error::Domain(format!("l must be in 1..=4, got {l}")));
    }
    if x < 1 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let root = x.isqrt();
    let root32 = u32::try_from(root).map_err(|_| Error::BoundExceeded {
        what: "count_tau_a",
        value: x,
        limit: u64::from(u32::MAX).pow(2),
    })?;
    let spf = SpfTable::new(root32);
    (1..=root).try_fold(0u64, |acc, m| {
        let t = crate::divisors::tau_k_of(l, &spf.factor(m)?)?;
        t.checked_mul(x / (m * m))
            .and_then(|v| acc.checked_add(v))
            .ok_or(Error::Overflow("count_tau_a"))
    })
}

/// One row of a residual table.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualAnalysis {
    pub rows: Vec<SummatoryReport>,
    pub median_abs_normalized: f64,
    pub max_abs_normalized: f64,
    /// `max |residual|/√x <= 10 × median` over the rows.
    pub bounded: bool,
}

pub fn residual_analysis(fam: &FunctionFamily, xs: &[u64]) -> Result<ResidualAnalysis> {
    if xs.is_empty() || xs.contains(&0) {
        return Err(Error::Domain("need at least one x, all positive".into()));
    }
    let constant = main_term_constant(fam.kind, fam.k)?;
    let rows = xs
        .iter()
        .map(|&x| {
            Ok(SummatoryReport::new(
                *fam,
                x,
                exact_summatory(fam, x)?,
                constant.value,
                constant.prime_cutoff,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut norms: Vec<f64> = rows.iter().map(|r| r.normalized_residual.abs()).collect();
    norms.sort_by(f64::total_cmp);
    let mid = norms.len() / 2;
    let median = if norms.len() % 2 == 1 {
        norms[mid]
    } else {
        (norms[mid - 1] + norms[mid]) / 2.0
    };
    let max = norms[norms.len() - 1];
    Ok(ResidualAnalysis {
        rows,
        median_abs_normalized: median,
        max_abs_normalized: max,
        bounded: max <= 10.0 * median,
    })
}

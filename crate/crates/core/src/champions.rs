//! Maximal-order laboratory: running maxima of
//! `log f · log log N / log N`, the extremal products `∏ 𝔭ˡ`, and Gaussian
//! prime tallies.
//!
//! None of this proves a limsup. The scans only show where the ratios sit at
//! desk scale; they approach their limits very slowly.

use serde::Serialize;

use crate::divisors::{Argument, BaseFunction, FunctionFamily};
use crate::error::{Error, Result};
use crate::primes::{factor_rational, gaussian_primes_up_to, primes_up_to, split_partner, split_prime, PrimeClass};
use crate::scalar::CompensatedSum;
use crate::segmented::map_segments;
use crate::summing::LocalRule;
use crate::GaussInt;

/// Smallest argument scanned: `log log 16 > 1`.
pub const MIN_SCAN: u64 = 16;

/// `log f · log log n / log n`.
pub fn order_ratio(value: u64, n: u64) -> f64 {
    let ln = (n as f64).ln();
    (value as f64).ln() * ln.ln() / ln
}

#[derive(Debug, Clone, Serialize)]
pub struct ChampionRecord {
    /// The integer, or a Gaussian integer attaining the maximum at this norm.
    pub argument: Argument,
    pub n_or_norm: u64,
    pub value: u64,
    pub ratio: f64,
    /// Set when the ratio beats every earlier argument.
    pub running_max: bool,
}

/// Records of the running maximum of the order ratio over `16 <= n <= x_max`.
/// Gaussian families are scanned by norm, using the largest value among the
/// classes of each norm.
pub fn champion_scan(fam: &FunctionFamily, x_max: u64) -> Result<Vec<ChampionRecord>> {
    if x_max < MIN_SCAN {
        return Err(Error::Domain(format!("x_max must be at least {MIN_SCAN}")));
    }
    let rule = LocalRule::norm_max(fam)?;
    let candidates = map_segments(x_max, &|p, e| rule.value(p, e), |lo, values| {
        let mut best = f64::NEG_INFINITY;
        let mut out = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            let n = lo + i as u64;
            if n < MIN_SCAN || v == 0 {
                continue;
            }
            let r = order_ratio(v, n);
            if r > best {
                best = r;
                out.push((n, v, r));
            }
        }
        Ok(out)
    })?;
    let mut best = f64::NEG_INFINITY;
    let mut records = Vec::new();
    for (n, v, r) in candidates.into_iter().flatten() {
        if r > best {
            best = r;
            let argument = if fam.is_gaussian() {
                Argument::Gaussian(maximizing_class(fam, n)?)
            } else {
                Argument::Rational(n)
            };
            records.push(ChampionRecord {
                argument,
                n_or_norm: n,
                value: v,
                ratio: r,
                running_max: true,
            });
        }
    }
    Ok(records)
}

/// A Gaussian integer of norm `n` where the family is largest.
fn maximizing_class(fam: &FunctionFamily, n: u64) -> Result<GaussInt> {
    let mut z = GaussInt::one();
    for (p, e) in factor_rational(n)?.iter() {
        let part = match PrimeClass::of_prime_unchecked(p) {
            PrimeClass::Ramified => GaussInt::new(1, 1).checked_pow(e)?,
            PrimeClass::Inert => GaussInt::from_int(p as i64).checked_pow(e / 2)?,
            PrimeClass::Split => {
                let pi = split_prime(p)?;
                let mut best = (0u64, 0u32);
                for i in 0..=e {
                    let v = fam.base_value(u64::from(i))? * fam.base_value(u64::from(e - i))?;
                    if v > best.0 {
                        best = (v, i);
                    }
                }
                pi.checked_pow(best.1)?
                    .checked_mul(&split_partner(&pi).checked_pow(e - best.1)?)?
            }
        };
        z = z.checked_mul(&part)?;
    }
    z.canonical()
}

/// Upper bound for any scanned ratio: `f(n) <= B^{ω(n)}` with `B` the largest
/// prime-power value and `ω(n) <= log₂ n`, so the ratio is at most
/// `ln B · log log x_max / ln 2`.
pub fn champion_ratio_bound(fam: &FunctionFamily, x_max: u64) -> Result<f64> {
    let rule = LocalRule::norm_max(fam)?;
    let max_e = 64 - x_max.leading_zeros();
    let probes: [u64; 3] = [2, 3, 5];
    let mut b = 1u64;
    for p in probes {
        for e in 1..=max_e {
            b = b.max(rule.value(p, e));
        }
    }
    Ok((b as f64).ln() * (x_max as f64).ln().ln() / std::f64::consts::LN_2)
}

/// Exact tallies of Gaussian primes (one per associate class) by norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimeCountReport {
    pub x: u64,
    pub count: u64,
    /// `∑′_{N(𝔭)<=x} ln N(𝔭)`.
    pub logsum: f64,
    /// `count / (x / ln x)`.
    pub count_ratio: f64,
    /// `logsum / x`.
    pub logsum_ratio: f64,
}

pub fn prime_counting_report(x: u64) -> Result<PrimeCountReport> {
    if x < 2 {
        return Err(Error::Domain("x must be at least 2".into()));
    }
    let mut count = 0u64;
    let mut logsum = CompensatedSum::new();
    for pi in gaussian_primes_up_to(x) {
        count += 1;
        logsum.add((pi.norm()? as f64).ln());
    }
    let xf = x as f64;
    let logsum = logsum.value();
    Ok(PrimeCountReport {
        x,
        count,
        logsum,
        count_ratio: count as f64 / (xf / xf.ln()),
        logsum_ratio: logsum / xf,
    })
}

/// The order ratio of `α = ∏_{N(𝔭)<=X} 𝔭ˡ` (or `∏_{p<=X} pˡ`), from prime
/// tallies alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub l: u32,
    pub max_norm: u64,
    /// Number of primes in the product.
    pub primes: u64,
    /// `f(l)`; the family's value at `α` is `f(l)^primes`.
    pub f_l: u64,
    /// `ln N(α) = l · ∑ ln N(𝔭)`.
    pub log_norm: f64,
    pub ratio: f64,
}

pub fn extremal_construction(fam: &FunctionFamily, l: u32, max_norm: u64) -> Result<ExtremalReport> {
    if l < 1 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    if max_norm < 100 {
        return Err(Error::Domain("X must be at least 100".into()));
    }
    let f_l = fam.base_value(u64::from(l))?;
    let (primes, logsum) = if fam.is_gaussian() {
        let r = prime_counting_report(max_norm)?;
        (r.count, r.logsum)
    } else {
        let ps = primes_up_to(max_norm);
        let s: CompensatedSum<f64> = ps.iter().map(|&p| (p as f64).ln()).collect();
        (ps.len() as u64, s.value())
    };
    let log_norm = f64::from(l) * logsum;
    let ratio = primes as f64 * (f_l as f64).ln() * log_norm.ln() / log_norm;
    Ok(ExtremalReport {
        l,
        max_norm,
        primes,
        f_l,
        log_norm,
        ratio,
    })
}

/// `log k / 2` for `τₖ` and `½ log C(k+1, 2)` for `𝔱ₖ`.
pub fn limsup_constant(base: BaseFunction, k: u32) -> Result<f64> {
    Ok((base.value(k, 2)? as f64).ln() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::{eval, FamilyKind};

    fn fam(kind: FamilyKind, k: u32) -> FunctionFamily {
        FunctionFamily::new(kind, k).unwrap()
    }

    #[test]
    fn squarefree_arguments_have_ratio_zero() {
        for n in [17u64, 30, 210, 2310] {
            assert_eq!(order_ratio(eval(&fam(FamilyKind::TauEKStar, 2), &Argument::Rational(n)).unwrap(), n), 0.0);
        }
        let recs = champion_scan(&fam(FamilyKind::TauEKStar, 2), 16).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].n_or_norm, 16);
    }

    #[test]
    fn records_increase_and_respect_bound() {
        for kind in FamilyKind::ALL {
            let f = fam(kind, 2);
            let recs = champion_scan(&f, 200_000).unwrap();
            let bound = champion_ratio_bound(&f, 200_000).unwrap();
            assert!(recs.windows(2).all(|w| w[0].n_or_norm < w[1].n_or_norm && w[0].ratio < w[1].ratio));
            assert!(recs.iter().all(|r| r.ratio >= 0.0 && r.ratio <= bound && r.running_max));
        }
    }

    #[test]
    fn gaussian_records_name_an_attaining_class() {
        let f = fam(FamilyKind::FrakTEK, 3);
        for rec in champion_scan(&f, 50_000).unwrap() {
            let Argument::Gaussian(z) = rec.argument else { panic!() };
            assert_eq!(z.norm().unwrap() as u64, rec.n_or_norm);
            assert_eq!(eval(&f, &rec.argument).unwrap(), rec.value);
        }
    }

    #[test]
    fn powers_of_two_follow_closed_form() {
        let f = fam(FamilyKind::TauEK, 3);
        let recs = champion_scan(&f, 1 << 20).unwrap();
        let closed = (4..=20u32)
            .map(|a| {
                let v = crate::divisors::tau_k(3, u64::from(a)).unwrap() as f64;
                v.ln() * (f64::from(a) * std::f64::consts::LN_2).ln() / (f64::from(a) * std::f64::consts::LN_2)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let best = recs.last().unwrap().ratio;
        assert!(best >= closed - 1e-12);
        for a in 4..=20u32 {
            let n = 1u64 << a;
            let v = eval(&f, &Argument::Rational(n)).unwrap();
            assert_eq!(v, crate::divisors::tau_k(3, u64::from(a)).unwrap());
        }
    }

    #[test]
    fn prime_count_examples() {
        let r = prime_counting_report(2).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(prime_counting_report(9).unwrap().count, 4);
        assert!(prime_counting_report(1).is_err());
    }

    #[test]
    fn extremal_degenerate_and_domain() {
        // τ₂(1) = 1
        let r = extremal_construction(&fam(FamilyKind::FrakTEK, 2), 1, 1000).unwrap();
        assert_eq!(r.ratio, 0.0);
        assert!(extremal_construction(&fam(FamilyKind::FrakTEK, 2), 0, 1000).is_err());
        assert!(extremal_construction(&fam(FamilyKind::FrakTEK, 2), 2, 99).is_err());
    }

    #[test]
    fn l_two_dominates_for_tau() {
        let f = fam(FamilyKind::FrakTEK, 2);
        let best = extremal_construction(&f, 2, 100_000).unwrap().ratio;
        for l in [1, 3, 4, 5] {
            assert!(extremal_construction(&f, l, 100_000).unwrap().ratio < best);
        }
    }

    #[test]
    fn limsup_constants() {
        assert_eq!(limsup_constant(BaseFunction::TauK, 2).unwrap(), 2f64.ln() / 2.0);
        assert_eq!(limsup_constant(BaseFunction::FrakTK, 3).unwrap(), 6f64.ln() / 2.0);
    }
}

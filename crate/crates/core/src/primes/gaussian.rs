//! Gaussian primes: classification of rational primes, splitting,
//! factorization in ℤ[i] and enumeration by norm.

use std::iter::Peekable;

use serde::Serialize;

use super::rational::{factor_rational, is_prime, pow_mod, primes_up_to};
use crate::error::{Error, Result};
use crate::gaussint::Unit;
use crate::GaussInt;

/// How a rational prime decomposes in ℤ[i].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PrimeClass {
    /// `p = 2 = -i(1+i)²`.
    Ramified,
    /// `p ≡ 1 (mod 4)`, a product of two non-associated primes of norm `p`.
    Split,
    /// `p ≡ 3 (mod 4)`, prime in ℤ[i] with norm `p²`.
    Inert,
}

impl PrimeClass {
    /// Classification by residue alone; `p` is assumed prime.
    pub fn of_prime_unchecked(p: u64) -> Self {
        match p % 4 {
            1 => PrimeClass::Split,
            3 => PrimeClass::Inert,
            _ => PrimeClass::Ramified,
        }
    }
}

pub fn classify(p: u64) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(PrimeClass::of_prime_unchecked(p))
}

/// A square root of -1 modulo the split prime `p`.
fn sqrt_minus_one(p: u64) -> u64 {
    (2..p)
        .map(|c| pow_mod(c, (p - 1) / 4, p))
        .find(|&r| (r as u128 * r as u128 % p as u128) as u64 == p - 1)
        .expect("a quadratic non-residue exists below p")
}

/// The prime `a+bi` with `a > b > 0` and `a² + b² = p`; its partner is `b+ai`.
pub fn split_prime(p: u64) -> Result<GaussInt> {
    match classify(p)? {
        PrimeClass::Split => {}
        class => return Err(Error::NotSplit { p, class }),
    }
    split_prime_unchecked(p)
}

pub(crate) fn split_prime_unchecked(p: u64) -> Result<GaussInt> {
    let r = sqrt_minus_one(p);
    let pi = GaussInt::from_int(p as i64)
        .gcd(&GaussInt::new(r as i64, 1))?
        .canonical()?;
    let pi = if pi.re > pi.im {
        pi
    } else {
        GaussInt::new(pi.im, pi.re)
    };
    if pi.norm()? as u64 != p || pi.im <= 0 {
        return Err(Error::Verification(format!("splitting {p} produced {pi}")));
    }
    Ok(pi)
}

/// The other prime above a split `p`, given the canonical one.
pub fn split_partner(pi: &GaussInt) -> GaussInt {
    GaussInt::new(pi.im, pi.re)
}

pub fn is_gaussian_prime(z: &GaussInt) -> Result<bool> {
    if z.is_zero() || z.is_unit() {
        return Err(Error::Domain(format!("{z} is zero or a unit")));
    }
    let n = z.norm()? as u64;
    if is_prime(n) {
        // norm 2 or a split prime
        return Ok(true);
    }
    let c = z.canonical()?;
    Ok(c.im == 0 && c.re as u64 % 4 == 3 && is_prime(c.re as u64))
}

/// `unit · ∏ primeᵉ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussFactorization {
    pub unit: Unit,
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn recompose(&self) -> Result<GaussInt> {
        let mut z = self.unit.to_gaussian::<i64>();
        for (p, e) in &self.factors {
            z = z.checked_mul(&p.checked_pow(*e)?)?;
        }
        Ok(z)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, e)| e)
    }
}

/// Canonical factorization of a nonzero Gaussian integer.
///
/// Primes are listed by norm; the two primes above a split `p` appear as
/// `a+bi` (with `a > b`) then `b+ai`.
pub fn factor_gauss(z: &GaussInt) -> Result<GaussFactorization> {
    if z.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let norm = factor_rational(z.norm()? as u64)?;
    let mut rest = *z;
    let mut factors = Vec::new();
    let peel = |rest: &mut GaussInt, pi: GaussInt, max: u32| -> Result<u32> {
        let mut e = 0;
        while e < max && pi.divides(rest)? {
            *rest = rest.divide_exact(&pi)?;
            e += 1;
        }
        Ok(e)
    };
    for (p, a) in norm.iter() {
        match PrimeClass::of_prime_unchecked(p) {
            PrimeClass::Ramified => {
                let pi = GaussInt::new(1, 1);
                let e = peel(&mut rest, pi, a)?;
                factors.push((pi, e));
            }
            PrimeClass::Inert => {
                if a % 2 == 1 {
                    return Err(Error::Verification(format!(
                        "inert prime {p} divides N({z}) to an odd power"
                    )));
                }
                let pi = GaussInt::from_int(p as i64);
                let e = peel(&mut rest, pi, a / 2)?;
                factors.push((pi, e));
            }
            PrimeClass::Split => {
                let pi = split_prime_unchecked(p)?;
                let e = peel(&mut rest, pi, a)?;
                let partner = split_partner(&pi);
                let f = peel(&mut rest, partner, a - e)?;
                if e > 0 {
                    factors.push((pi, e));
                }
                if f > 0 {
                    factors.push((partner, f));
                }
            }
        }
    }
    factors.sort_by_key(|(p, _): &(GaussInt, u32)| (p.norm().unwrap_or(i64::MAX), -p.re));
    let unit = rest
        .unit()
        .ok_or_else(|| Error::Verification(format!("non-unit residue {rest} factoring {z}")))?;
    let out = GaussFactorization { unit, factors };
    let exps: u64 = out
        .factors
        .iter()
        .map(|(p, e)| p.norm().map(|n| (n as u64).pow(*e)))
        .product::<Result<u64>>()?;
    if exps != z.norm()? as u64 || out.factors.iter().any(|&(_, e)| e == 0) {
        return Err(Error::Verification(format!("inconsistent factorization of {z}")));
    }
    Ok(out)
}

/// Canonical Gaussian primes with norm `<= max_norm`, ordered by norm.
pub fn gaussian_primes_up_to(max_norm: u64) -> GaussianPrimes {
    let primes = primes_up_to(max_norm);
    let inert: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| p % 4 == 3)
        .take_while(|&p| p.checked_mul(p).is_some_and(|n| n <= max_norm))
        .collect();
    GaussianPrimes {
        rational: primes.into_iter().peekable(),
        inert: inert.into_iter().peekable(),
        pending: None,
    }
}

/// Stream returned by [`gaussian_primes_up_to`].
pub struct GaussianPrimes {
    rational: Peekable<std::vec::IntoIter<u64>>,
    inert: Peekable<std::vec::IntoIter<u64>>,
    pending: Option<GaussInt>,
}

impl Iterator for GaussianPrimes {
    type Item = GaussInt;

    fn next(&mut self) -> Option<GaussInt> {
        if let Some(z) = self.pending.take() {
            return Some(z);
        }
        let inert_norm = self.inert.peek().map(|&q| q * q);
        loop {
            let next_rational = self.rational.peek().copied();
            match (next_rational, inert_norm) {
                (Some(p), Some(n)) if n < p => break,
                (None, None) => return None,
                (None, Some(_)) => break,
                (Some(p), _) => {
                    self.rational.next();
                    match PrimeClass::of_prime_unchecked(p) {
                        PrimeClass::Ramified => return Some(GaussInt::new(1, 1)),
                        PrimeClass::Split => {
                            let pi = split_prime_unchecked(p).expect("p splits");
                            self.pending = Some(split_partner(&pi));
                            return Some(pi);
                        }
                        PrimeClass::Inert => continue,
                    }
                }
            }
        }
        self.inert.next().map(|q| GaussInt::from_int(q as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn classification() {
        assert_eq!(classify(2), Ok(PrimeClass::Ramified));
        assert_eq!(classify(7), Ok(PrimeClass::Inert));
        assert_eq!(classify(13), Ok(PrimeClass::Split));
        assert_eq!(classify(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn splitting_examples() {
        // exhaustive a² + b² = p with a > b > 0
        let brute = |p: i64| {
            (1..p)
                .flat_map(|a| (1..a).map(move |b| (a, b)))
                .find(|&(a, b)| a * a + b * b == p)
                .map(|(a, b)| g(a, b))
        };
        assert_eq!(split_prime(5), Ok(g(2, 1)));
        assert_eq!(brute(5), Some(g(2, 1)));
        assert_eq!(split_prime(13), Ok(g(3, 2)));
        assert_eq!(brute(13), Some(g(3, 2)));
        assert!(matches!(
            split_prime(2),
            Err(Error::NotSplit { class: PrimeClass::Ramified, .. })
        ));
        assert!(matches!(split_prime(7), Err(Error::NotSplit { .. })));
    }

    #[test]
    fn split_pairs_up_to_1e5() {
        for p in primes_up_to(100_000).into_iter().filter(|p| p % 4 == 1) {
            let pi = split_prime(p).unwrap();
            let partner = split_partner(&pi);
            assert!(pi.re > pi.im && pi.im > 0);
            assert!(is_gaussian_prime(&pi).unwrap() && is_gaussian_prime(&partner).unwrap());
            assert!(!pi.is_associate(&partner).unwrap());
            let prod = pi.checked_mul(&partner).unwrap();
            assert!(prod.is_associate(&g(p as i64, 0)).unwrap());
        }
    }

    #[test]
    fn primality_examples() {
        assert_eq!(is_gaussian_prime(&g(1, 1)), Ok(true));
        assert_eq!(is_gaussian_prime(&g(3, 0)), Ok(true));
        assert_eq!(is_gaussian_prime(&g(0, -7)), Ok(true));
        assert_eq!(is_gaussian_prime(&g(2, 0)), Ok(false));
        assert_eq!(is_gaussian_prime(&g(5, 0)), Ok(false));
        assert_eq!(is_gaussian_prime(&g(3, 3)), Ok(false));
        assert!(is_gaussian_prime(&g(0, 0)).is_err());
        assert!(is_gaussian_prime(&g(0, -1)).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factor_gauss(&g(3, 1)).unwrap();
        assert_eq!(f.unit, Unit::MinusI);
        assert_eq!(f.factors, vec![(g(1, 1), 1), (g(1, 2), 1)]);

        let f = factor_gauss(&g(5, 0)).unwrap();
        assert_eq!(f.unit, Unit::MinusI);
        assert_eq!(f.factors, vec![(g(2, 1), 1), (g(1, 2), 1)]);

        let f = factor_gauss(&g(1, 1)).unwrap();
        assert_eq!(f.unit, Unit::One);
        assert_eq!(f.factors, vec![(g(1, 1), 1)]);

        let f = factor_gauss(&g(-4, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(1, 1), 4)]);
        assert_eq!(f.recompose(), Ok(g(-4, 0)));

        assert!(factor_gauss(&g(0, 0)).is_err());
        assert_eq!(factor_gauss(&g(0, -1)).unwrap().factors, vec![]);
    }

    #[test]
    fn enumeration_examples() {
        let list = |x| gaussian_primes_up_to(x).collect::<Vec<_>>();
        assert_eq!(list(1), vec![]);
        assert_eq!(list(2), vec![g(1, 1)]);
        assert_eq!(list(5), vec![g(1, 1), g(2, 1), g(1, 2)]);
        assert_eq!(list(9), vec![g(1, 1), g(2, 1), g(1, 2), g(3, 0)]);
    }

    #[test]
    fn enumeration_matches_lattice_scan() {
        let x = 5_000i64;
        let mut scan: Vec<GaussInt> = (1..=x)
            .flat_map(|a| (0..=x).map(move |b| g(a, b)))
            .filter(|z| z.norm().unwrap() <= x)
            .filter(|z| !z.is_unit() && is_gaussian_prime(z).unwrap())
            .collect();
        let mut listed: Vec<GaussInt> = gaussian_primes_up_to(x as u64).collect();
        let norms: Vec<i64> = listed.iter().map(|z| z.norm().unwrap()).collect();
        assert!(norms.windows(2).all(|w| w[0] <= w[1]));
        scan.sort_by(|a, b| a.norm_order(b));
        listed.sort_by(|a, b| a.norm_order(b));
        assert_eq!(scan, listed);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]
        #[test]
        fn factorization_round_trips(a in -1000i64..=1000, b in -1000i64..=1000) {
            prop_assume!(a != 0 || b != 0);
            let z = g(a, b);
            let f = factor_gauss(&z).unwrap();
            prop_assert_eq!(f.recompose().unwrap(), z);
            for w in f.factors.windows(2) {
                prop_assert!(w[0].0.norm().unwrap() <= w[1].0.norm().unwrap());
                prop_assert!(!w[0].0.is_associate(&w[1].0).unwrap());
            }
            for (p, _) in &f.factors {
                prop_assert!(is_gaussian_prime(p).unwrap());
                prop_assert_eq!(p.canonical().unwrap(), *p);
            }
        }
    }
}

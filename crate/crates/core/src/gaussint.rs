//! Exact arithmetic in the Gaussian integers.
//!
//! Every operation is checked: overflow is reported as [`Error::Overflow`]
//! rather than wrapping. Associate classes are represented by the unique
//! member of the quarter plane `re >= 1, im >= 0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;

/// One of the four units of ℤ[i].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unit {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::MinusOne, Unit::MinusI];

    /// Power of `i` this unit equals.
    pub fn exponent(self) -> u8 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::MinusOne => 2,
            Unit::MinusI => 3,
        }
    }

    pub fn from_exponent(e: u32) -> Self {
        Self::ALL[(e % 4) as usize]
    }

    pub fn mul(self, other: Unit) -> Unit {
        Unit::from_exponent(u32::from(self.exponent()) + u32::from(other.exponent()))
    }

    pub fn inverse(self) -> Unit {
        Unit::from_exponent(4 - u32::from(self.exponent()))
    }

    pub fn to_gaussian<T: GaussScalar>(self) -> Gaussian<T> {
        let (o, z) = (T::one(), T::zero());
        match self {
            Unit::One => Gaussian::new(o, z),
            Unit::I => Gaussian::new(z, o),
            Unit::MinusOne => Gaussian::new(-o, z),
            Unit::MinusI => Gaussian::new(z, -o),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::MinusOne => "-1",
            Unit::MinusI => "-i",
        })
    }
}

/// A Gaussian integer `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

fn checked_neg<T: GaussScalar>(v: T) -> Result<T> {
    T::zero().checked_sub(&v).ok_or(Error::Overflow("negation"))
}

/// Floor of `a / n` for `n > 0`.
fn floor_div<T: GaussScalar>(a: T, n: T) -> T {
    let q = a / n;
    if a % n < T::zero() {
        q - T::one()
    } else {
        q
    }
}

impl<T: GaussScalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn from_int(re: T) -> Self {
        Self::new(re, T::zero())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.unit().is_some()
    }

    /// The unit this value equals, if any.
    pub fn unit(&self) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.to_gaussian::<T>() == *self)
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Result<T> {
        let a = self.re.checked_mul(&self.re).ok_or(Error::Overflow("norm"))?;
        let b = self.im.checked_mul(&self.im).ok_or(Error::Overflow("norm"))?;
        a.checked_add(&b).ok_or(Error::Overflow("norm"))
    }

    pub fn conj(&self) -> Result<Self> {
        Ok(Self::new(self.re, checked_neg(self.im)?))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Ok(Self::new(checked_neg(self.re)?, checked_neg(self.im)?))
    }

    pub fn checked_add(&self, w: &Self) -> Result<Self> {
        let re = self.re.checked_add(&w.re).ok_or(Error::Overflow("addition"))?;
        let im = self.im.checked_add(&w.im).ok_or(Error::Overflow("addition"))?;
        Ok(Self::new(re, im))
    }

    pub fn checked_sub(&self, w: &Self) -> Result<Self> {
        let re = self.re.checked_sub(&w.re).ok_or(Error::Overflow("subtraction"))?;
        let im = self.im.checked_sub(&w.im).ok_or(Error::Overflow("subtraction"))?;
        Ok(Self::new(re, im))
    }

    pub fn checked_mul(&self, w: &Self) -> Result<Self> {
        let m = |a: T, b: T| a.checked_mul(&b).ok_or(Error::Overflow("multiplication"));
        let re = m(self.re, w.re)?
            .checked_sub(&m(self.im, w.im)?)
            .ok_or(Error::Overflow("multiplication"))?;
        let im = m(self.re, w.im)?
            .checked_add(&m(self.im, w.re)?)
            .ok_or(Error::Overflow("multiplication"))?;
        Ok(Self::new(re, im))
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<Self> {
        let mut base = *self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_unit(&self, u: Unit) -> Result<Self> {
        let mut z = *self;
        for _ in 0..u.exponent() {
            // (a + bi)·i = -b + ai
            z = Self::new(checked_neg(z.im)?, z.re);
        }
        Ok(z)
    }

    /// `z·conj(w)` and `N(w)`, the pieces of both division flavours.
    fn div_parts(&self, w: &Self) -> Result<(Self, T)> {
        if w.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok((self.checked_mul(&w.conj()?)?, w.norm()?))
    }

    /// The exact quotient `self / w`; fails unless `w` divides `self`.
    pub fn divide_exact(&self, w: &Self) -> Result<Self> {
        let (num, n) = self.div_parts(w)?;
        if !(num.re % n).is_zero() || !(num.im % n).is_zero() {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: w.to_string(),
            });
        }
        Ok(Self::new(num.re / n, num.im / n))
    }

    pub fn divides(&self, z: &Self) -> Result<bool> {
        let (num, n) = z.div_parts(self)?;
        Ok((num.re % n).is_zero() && (num.im % n).is_zero())
    }

    /// Euclidean remainder with the quotient rounded to the nearest lattice
    /// point, so `N(r) <= N(w)/2`.
    pub fn rem_nearest(&self, w: &Self) -> Result<Self> {
        let (num, n) = self.div_parts(w)?;
        let half = n / (T::one() + T::one());
        let round = |a: T| -> Result<T> {
            Ok(floor_div(a.checked_add(&half).ok_or(Error::Overflow("division"))?, n))
        };
        let q = Self::new(round(num.re)?, round(num.im)?);
        self.checked_sub(&q.checked_mul(w)?)
    }

    /// A greatest common divisor (up to units) by the Euclidean algorithm.
    pub fn gcd(&self, w: &Self) -> Result<Self> {
        let (mut a, mut b) = (*self, *w);
        while !b.is_zero() {
            let r = a.rem_nearest(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Returns `(c, u)` with `self = u·c` and `c` in `re >= 1, im >= 0`.
    pub fn canonical_associate(&self) -> Result<(Self, Unit)> {
        if self.is_zero() {
            return Err(Error::Domain("zero has no associate class".into()));
        }
        for u in Unit::ALL {
            // c = u⁻¹·z
            let c = self.mul_unit(u.inverse())?;
            if c.re > T::zero() && c.im >= T::zero() {
                return Ok((c, u));
            }
        }
        unreachable!("every nonzero class meets the quarter plane")
    }

    pub fn canonical(&self) -> Result<Self> {
        Ok(self.canonical_associate()?.0)
    }

    pub fn is_associate(&self, w: &Self) -> Result<bool> {
        if self.is_zero() || w.is_zero() {
            return Ok(self.is_zero() && w.is_zero());
        }
        Ok(self.canonical()? == w.canonical()?)
    }

    /// Ordering by `(norm, re, im)`, used for deterministic listings.
    pub fn norm_order(&self, w: &Self) -> Ordering {
        let key = |z: &Self| (z.norm().ok(), z.re, z.im);
        key(self).cmp(&key(w))
    }
}

impl<T: GaussScalar> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < T::zero() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<T: GaussScalar> FromStr for Gaussian<T> {
    type Err = Error;

    /// Accepts `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` with optional spaces.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let int = |t: &str| -> Result<T> {
            let t = t.strip_prefix('+').unwrap_or(t);
            if t.is_empty() || t.starts_with(['+', '-']) && t.len() == 1 {
                return Err(bad("missing digits"));
            }
            t.parse::<T>().map_err(|_| bad("invalid or out-of-range integer"))
        };
        if s.is_empty() {
            return Err(bad("empty literal"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from_int(int(&s)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(i, _)| i);
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => T::one(),
            "-" => -T::one(),
            t => int(t)?,
        };
        Ok(Self::new(int(re_part)?, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = Gaussian<i64>;

    fn g(re: i64, im: i64) -> G {
        G::new(re, im)
    }

    #[test]
    fn norms() {
        assert_eq!(g(1, 1).norm(), Ok(2));
        assert_eq!(g(0, 0).norm(), Ok(0));
        assert_eq!(g(2, 1).norm(), Ok(5));
        assert_eq!(g(i64::MAX, 1).norm(), Err(Error::Overflow("norm")));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(g(-3, 0).canonical_associate(), Ok((g(3, 0), Unit::MinusOne)));
        assert_eq!(g(0, 1).canonical_associate(), Ok((g(1, 0), Unit::I)));
        // associates of -1+3i: -3-i, 1-3i, 3+i
        assert_eq!(g(-1, 3).canonical_associate(), Ok((g(3, 1), Unit::I)));
        assert!(g(0, 0).canonical_associate().is_err());
    }

    #[test]
    fn products_and_quotients() {
        assert_eq!(g(1, 1).checked_mul(&g(1, 1)), Ok(g(0, 2)));
        assert_eq!(g(2, 1).conj(), Ok(g(2, -1)));
        assert_eq!(g(5, 0).divide_exact(&g(2, 1)), Ok(g(2, -1)));
        assert!(matches!(
            g(5, 0).divide_exact(&g(1, 1)),
            Err(Error::NotDivisible { .. })
        ));
        assert!(g(i64::MAX, 0).checked_mul(&g(2, 0)).is_err());
    }

    #[test]
    fn gcd_of_split_prime() {
        // 2² ≡ -1 mod 5, so gcd(5, 2+i) is a prime of norm 5
        let d = g(5, 0).gcd(&g(2, 1)).unwrap();
        assert_eq!(d.norm(), Ok(5));
    }

    #[test]
    fn parse_and_display() {
        for s in ["3+1i", "-1+3i", "2-1i", "0+0i", "-7-12i"] {
            let z: G = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!("3 + 1i".parse::<G>(), Ok(g(3, 1)));
        assert_eq!("5".parse::<G>(), Ok(g(5, 0)));
        assert_eq!("-i".parse::<G>(), Ok(g(0, -1)));
        assert_eq!("2i".parse::<G>(), Ok(g(0, 2)));
        assert_eq!("1+i".parse::<G>(), Ok(g(1, 1)));
        assert_eq!("-4-i".parse::<G>(), Ok(g(-4, -1)));
        for bad in ["", "i+", "3+", "abc", "1+2j", "99999999999999999999"] {
            assert!(bad.parse::<G>().is_err(), "{bad}");
        }
    }

    #[test]
    fn narrow_component_types() {
        let z = Gaussian::<i8>::new(10, 10);
        assert!(z.checked_mul(&z).is_err());
        assert_eq!(Gaussian::<i32>::new(3, 4).norm(), Ok(25));
        assert_eq!(Gaussian::<i128>::new(-1, 3).canonical(), Ok(Gaussian::new(3, 1)));
    }

    proptest! {
        #[test]
        fn associates_share_a_representative(re in -10_000i64..10_000, im in -10_000i64..10_000) {
            prop_assume!(re != 0 || im != 0);
            let z = g(re, im);
            let (c, u) = z.canonical_associate().unwrap();
            prop_assert_eq!(c.mul_unit(u).unwrap(), z);
            prop_assert_eq!(c.norm().unwrap(), z.norm().unwrap());
            for v in Unit::ALL {
                prop_assert_eq!(z.mul_unit(v).unwrap().canonical().unwrap(), c);
            }
        }

        #[test]
        fn norm_multiplicative_and_division_inverts(
            a in -30_000i64..30_000, b in -30_000i64..30_000,
            c in -30_000i64..30_000, d in -30_000i64..30_000,
        ) {
            let (z, w) = (g(a, b), g(c, d));
            let zw = z.checked_mul(&w).unwrap();
            prop_assert_eq!(zw.norm().unwrap(), z.norm().unwrap() * w.norm().unwrap());
            if !w.is_zero() {
                prop_assert_eq!(zw.divide_exact(&w).unwrap(), z);
            }
        }

        #[test]
        fn text_round_trip(a in any::<i64>(), b in any::<i64>()) {
            let z = g(a, b);
            prop_assert_eq!(z.to_string().parse::<G>().unwrap(), z);
        }
    }
}

//! Scalar abstractions shared by the generic kernels.
//!
//! Gaussian integers are generic over checked signed primitives, power series
//! over any exact coefficient ring, and the Euler products over floats.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{
    CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, One,
    PrimInt, Signed, ToPrimitive, Zero,
};

/// Component type of a Gaussian integer: a signed primitive with checked ops.
pub trait GaussScalar:
    PrimInt + Signed + FromPrimitive + FromStr + Debug + Display + Hash + Send + Sync + 'static
{
}

impl<T> GaussScalar for T where
    T: PrimInt + Signed + FromPrimitive + FromStr + Debug + Display + Hash + Send + Sync + 'static
{
}

/// Exact coefficient ring for truncated power series.
///
/// Every operation is checked so fixed-width coefficients report overflow
/// instead of wrapping. `BigInt` satisfies this too.
pub trait SeriesCoeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + ToPrimitive
    + Display
{
}

impl<T> SeriesCoeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
        + ToPrimitive
        + Display
{
}

/// Floating scalar for Euler products and zeta values.
pub trait RealScalar: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

impl<T> RealScalar for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

pub(crate) fn real<F: RealScalar>(v: f64) -> F {
    F::from_f64(v).expect("f64 is representable")
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<F> {
    sum: F,
    carry: F,
}

impl<F: Float> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self {
            sum: F::zero(),
            carry: F::zero(),
        }
    }
}

impl<F: Float> CompensatedSum<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: F) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry = self.carry + ((self.sum - t) + v);
        } else {
            self.carry = self.carry + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    /// Folds another partial sum in, keeping both carries.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> F {
        self.sum + self.carry
    }
}

impl<F: Float> FromIterator<F> for CompensatedSum<F> {
    fn from_iter<I: IntoIterator<Item = F>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn works_for_f32() {
        let s: CompensatedSum<f32> = [1.0e8f32, 1.0, -1.0e8].into_iter().collect();
        assert_eq!(s.value(), 1.0);
    }
}

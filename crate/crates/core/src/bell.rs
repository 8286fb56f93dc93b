//! Truncated power series with exact coefficients, and the factorization of
//! Bell series into products of `(1 - xʲ)^{-eⱼ}`.
//!
//! A multiplicative function whose local factor `∑ f(pᵃ) xᵃ` does not depend
//! on the prime has Dirichlet series `∏ⱼ ζ(js)^{eⱼ} · g(s)` (or with the Hecke
//! zeta `Z` over ℤ[i]) exactly when
//! `∑ f(pᵃ) xᵃ · ∏ⱼ (1 - xʲ)^{eⱼ} = 1 + O(x^{T+1})`, with `g` absolutely
//! convergent for `Re s > 1/(T+1)`.

use serde::Serialize;

use crate::divisors::{FamilyKind, FunctionFamily};
use crate::error::{Error, Result};
use crate::scalar::SeriesCoeff;

/// `c₀ + c₁x + … + c_T x^T`, arithmetic taken mod `x^{T+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

fn coeff<C: SeriesCoeff>(v: i64) -> C {
    C::from_i64(v).expect("every coefficient ring holds small integers")
}

impl<C: SeriesCoeff> TruncatedSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least c₀".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| coeff(v)).collect())
    }

    pub fn one(truncation: usize) -> Self {
        let mut coeffs = vec![C::zero(); truncation + 1];
        coeffs[0] = C::one();
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.first_nonconstant().is_none() && self.coeffs[0].is_one()
    }

    /// Index of the first nonzero coefficient past `x⁰`.
    pub fn first_nonconstant(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&j| !self.coeffs[j].is_zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let t = self.truncation();
        if other.truncation() != t {
            return Err(Error::Domain(format!(
                "truncation mismatch: {t} vs {}",
                other.truncation()
            )));
        }
        let mut out = vec![C::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                let ab = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
                out[i + j] = out[i + j]
                    .checked_add(&ab)
                    .ok_or(Error::Overflow("series product"))?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `(1 - x^shift)^exponent` for any integer exponent, by the generalized
    /// binomial theorem: the coefficient of `x^{shift·i}` is `(-1)ⁱ C(e, i)`.
    pub fn binomial_factor(shift: usize, exponent: i64, truncation: usize) -> Result<Self> {
        if shift == 0 {
            return Err(Error::Domain("shift must be at least 1".into()));
        }
        let mut out = Self::one(truncation);
        let mut c = C::one();
        let mut i = 1usize;
        while shift * i <= truncation {
            // C(e, i) = C(e, i-1)·(e - i + 1)/i, the division is exact
            let step = (i as i64 - 1)
                .checked_sub(exponent)
                .ok_or(Error::Overflow("binomial factor"))?;
            c = c
                .checked_mul(&coeff::<C>(step))
                .and_then(|v| v.checked_div(&coeff::<C>(i as i64)))
                .ok_or(Error::Overflow("binomial factor"))?;
            out.coeffs[shift * i] = c.clone();
            i += 1;
        }
        Ok(out)
    }
}

/// Which zeta function the factors `(1 - xʲ)` stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZetaBase {
    /// Riemann ζ, for functions on ℤ.
    Zeta,
    /// Hecke `Z(s) = ζ(s)L(s, χ₄)`, for functions on ℤ[i].
    HeckeZ,
}

impl ZetaBase {
    pub fn for_family(kind: FamilyKind) -> Self {
        if kind.is_gaussian() {
            ZetaBase::HeckeZ
        } else {
            ZetaBase::Zeta
        }
    }
}

/// `∏ⱼ ζ(js)^{eⱼ}` (or `Z`) times a remainder whose Bell series is `remainder`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaFactorization<C> {
    pub base: ZetaBase,
    /// `(shift j, exponent eⱼ)` for `j = 1..=T`.
    pub terms: Vec<(usize, i64)>,
    pub remainder: TruncatedSeries<C>,
    pub remainder_order: Option<usize>,
}

impl<C: SeriesCoeff> ZetaFactorization<C> {
    /// Rebuilds the Bell series `remainder · ∏ⱼ (1 - xʲ)^{-eⱼ}`.
    pub fn recompose(&self) -> Result<TruncatedSeries<C>> {
        let t = self.remainder.truncation();
        let mut s = self.remainder.clone();
        for &(j, e) in &self.terms {
            let neg = e.checked_neg().ok_or(Error::Overflow("exponent"))?;
            s = s.mul(&TruncatedSeries::binomial_factor(j, neg, t)?)?;
        }
        Ok(s)
    }
}

/// Local factor `∑ₐ base(a) xᵃ` of a family, the same at every prime.
pub fn bell_series<C: SeriesCoeff>(
    fam: &FunctionFamily,
    truncation: usize,
) -> Result<TruncatedSeries<C>> {
    let table = fam.base_table(truncation as u64)?;
    TruncatedSeries::new(
        table
            .into_iter()
            .map(|v| C::from_u64(v).ok_or(Error::Overflow("Bell coefficient")))
            .collect::<Result<_>>()?,
    )
}

/// Greedy elimination: for `j = 1..=T` take `eⱼ` as the current `xʲ`
/// coefficient and multiply by `(1 - xʲ)^{eⱼ}`, which clears it.
pub fn derive_zeta_exponents<C: SeriesCoeff>(
    series: &TruncatedSeries<C>,
    base: ZetaBase,
) -> Result<ZetaFactorization<C>> {
    if !series.coeffs[0].is_one() {
        return Err(Error::Domain("Bell series must start with 1".into()));
    }
    let t = series.truncation();
    let mut residual = series.clone();
    let mut terms = Vec::with_capacity(t);
    for j in 1..=t {
        let e = residual.coeffs[j]
            .to_i64()
            .ok_or(Error::Overflow("zeta exponent"))?;
        if e != 0 {
            residual = residual.mul(&TruncatedSeries::binomial_factor(j, e, t)?)?;
        }
        terms.push((j, e));
    }
    let remainder_order = residual.first_nonconstant();
    Ok(ZetaFactorization {
        base,
        terms,
        remainder: residual,
        remainder_order,
    })
}

/// Truncation through which the closed-form factorization clears the Bell
/// series: the remainder starts at `x⁹` for `τₖ`-based families and at `x⁶`
/// for `𝔱ₖ`-based ones.
pub fn default_truncation(kind: FamilyKind) -> usize {
    match kind {
        FamilyKind::TauEK | FamilyKind::FrakTEK => 8,
        FamilyKind::TauEKStar | FamilyKind::FrakTEKStar => 5,
    }
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Verification(format!(
            "{what}: {num}/{den} is not an integer"
        )));
    }
    Ok(num / den)
}

/// The closed-form exponent polynomials evaluated at `k`, for shifts
/// `1..=default_truncation(kind)`.
pub fn closed_form_exponents(kind: FamilyKind, k: u32) -> Result<Vec<(usize, i64)>> {
    let k = i64::from(k);
    let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
    let exps = match kind {
        FamilyKind::TauEK | FamilyKind::FrakTEK => vec![
            1,
            k - 1,
            0,
            0,
            exact_div(k - k2, 2, "shift 5")?,
            exact_div(-k3 + 6 * k2 - 5 * k, 6, "shift 6")?,
            exact_div(k3 - 4 * k2 + 3 * k, 2, "shift 7")?,
            exact_div(3 * k4 - 26 * k3 + 57 * k2 - 34 * k, 24, "shift 8")?,
        ],
        FamilyKind::TauEKStar | FamilyKind::FrakTEKStar => vec![
            1,
            exact_div(k2 + k - 2, 2, "shift 2")?,
            exact_div(-k2 + k, 2, "shift 3")?,
            exact_div(-k4 + 7 * k2 - 6 * k, 12, "shift 4")?,
            exact_div(5 * k4 - 6 * k3 - 5 * k2 + 6 * k, 24, "shift 5")?,
        ],
    };
    Ok(exps.into_iter().enumerate().map(|(i, e)| (i + 1, e)).collect())
}

/// Outcome of checking a family's closed-form factorization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub family: FunctionFamily,
    pub base: ZetaBase,
    pub truncation: usize,
    /// Bell coefficients `c₀..c_T` (as strings, to stay exact).
    pub coefficients: Vec<String>,
    pub closed_form: Vec<(usize, i64)>,
    pub derived: Vec<(usize, i64)>,
    /// Bell series times `∏ (1 - xʲ)^{eⱼ}` with the closed-form exponents.
    pub residual: Vec<String>,
    /// First `xʲ` (with `j` inside the checked range) that is not cleared,
    /// and its coefficient.
    pub first_bad: Option<(usize, String)>,
    /// First shift where derived and closed-form exponents disagree.
    pub exponent_mismatch: Option<usize>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.first_bad.is_none() && self.exponent_mismatch.is_none()
    }
}

/// Builds the report for `fam` at `truncation >= default_truncation`. Only
/// coefficients up to the default truncation are required to vanish.
pub fn factorization_report<C: SeriesCoeff>(
    fam: &FunctionFamily,
    truncation: usize,
) -> Result<FactorizationReport> {
    let checked = default_truncation(fam.kind);
    if truncation < checked {
        return Err(Error::Domain(format!(
            "truncation must be at least {checked} for {}",
            fam.kind
        )));
    }
    let bell: TruncatedSeries<C> = bell_series(fam, truncation)?;
    let closed = closed_form_exponents(fam.kind, fam.k)?;
    let mut residual = bell.clone();
    for &(j, e) in &closed {
        residual = residual.mul(&TruncatedSeries::binomial_factor(j, e, truncation)?)?;
    }
    let base = ZetaBase::for_family(fam.kind);
    let derived = derive_zeta_exponents(&bell, base)?.terms;
    let first_bad = residual
        .first_nonconstant()
        .filter(|&j| j <= checked)
        .map(|j| (j, residual.coeffs[j].to_string()));
    let exponent_mismatch = closed
        .iter()
        .zip(&derived)
        .find(|(a, b)| a != b)
        .map(|(a, _)| a.0);
    let strings = |s: &TruncatedSeries<C>| s.coeffs.iter().map(|c| c.to_string()).collect();
    Ok(FactorizationReport {
        family: *fam,
        base,
        truncation,
        coefficients: strings(&bell),
        closed_form: closed,
        derived,
        residual: strings(&residual),
        first_bad,
        exponent_mismatch,
    })
}

/// Checks the closed-form factorization at the default truncation, failing
/// with the first coefficient that is not cleared.
pub fn verify_factorization(fam: &FunctionFamily) -> Result<FactorizationReport> {
    let report = factorization_report::<i128>(fam, default_truncation(fam.kind))?;
    if let Some((j, c)) = &report.first_bad {
        return Err(Error::Verification(format!(
            "{fam}: residual coefficient of x^{j} is {c}, expected 0"
        )));
    }
    if let Some(j) = report.exponent_mismatch {
        return Err(Error::Verification(format!(
            "{fam}: derived exponent at shift {j} differs from the closed form"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Series;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn s(v: &[i64]) -> Series {
        Series::from_i64s(v).unwrap()
    }

    fn fam(kind: FamilyKind, k: u32) -> FunctionFamily {
        FunctionFamily::new(kind, k).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(s(&[1, 1, 0]).mul(&s(&[1, -1, 0])), Ok(s(&[1, 0, -1])));
        let x = s(&[3, -2, 7, 0, 5]);
        assert_eq!(Series::one(4).mul(&x), Ok(x.clone()));
        assert_eq!(s(&[1; 6]).mul(&s(&[1, -1, 0, 0, 0, 0])), Ok(Series::one(5)));
        assert!(s(&[1, 1]).mul(&s(&[1, 1, 1])).is_err());
        assert!(TruncatedSeries::<i8>::from_i64s(&[100, 0])
            .unwrap()
            .mul(&TruncatedSeries::from_i64s(&[100, 0]).unwrap())
            .is_err());
    }

    #[test]
    fn binomial_factors() {
        assert_eq!(Series::binomial_factor(1, -1, 5), Ok(s(&[1; 6])));
        assert_eq!(Series::binomial_factor(2, 2, 4), Ok(s(&[1, 0, -2, 0, 1])));
        assert_eq!(
            Series::binomial_factor(5, -1, 9),
            Ok(s(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0]))
        );
        // (1 - x)^{-2} = ∑ (n+1) xⁿ
        assert_eq!(Series::binomial_factor(1, -2, 4), Ok(s(&[1, 2, 3, 4, 5])));
        assert!(Series::binomial_factor(0, 1, 4).is_err());
    }

    #[test]
    fn bell_series_examples() {
        assert_eq!(
            bell_series::<i128>(&fam(FamilyKind::FrakTEK, 2), 8),
            Ok(s(&[1, 1, 2, 2, 3, 2, 4, 2, 4]))
        );
        assert_eq!(
            bell_series::<i128>(&fam(FamilyKind::FrakTEKStar, 2), 6),
            Ok(s(&[1, 1, 3, 2, 5, 4, 6]))
        );
        for kind in FamilyKind::ALL {
            assert_eq!(bell_series::<i128>(&fam(kind, 5), 1), Ok(s(&[1, 1])));
        }
    }

    #[test]
    fn derivation_examples() {
        let d = derive_zeta_exponents(&s(&[1, 1, 2, 2, 3, 2, 4, 2, 4]), ZetaBase::HeckeZ).unwrap();
        let e: Vec<i64> = d.terms.iter().map(|t| t.1).collect();
        assert_eq!(e, vec![1, 1, 0, 0, -1, 1, -1, 0]);
        assert!(d.remainder.is_one());
        assert_eq!(d.remainder_order, None);

        let d = derive_zeta_exponents(&s(&[1, 1, 3, 2, 5, 4, 6]), ZetaBase::HeckeZ).unwrap();
        let e: Vec<i64> = d.terms.iter().map(|t| t.1).collect();
        assert_eq!(&e[..5], &[1, 2, -1, 0, 1]);

        let d = derive_zeta_exponents(&Series::one(7), ZetaBase::Zeta).unwrap();
        assert!(d.terms.iter().all(|t| t.1 == 0));
        assert!(d.remainder.is_one());

        assert!(derive_zeta_exponents(&s(&[2, 1]), ZetaBase::Zeta).is_err());
    }

    #[test]
    fn closed_forms_at_small_k() {
        let e = closed_form_exponents(FamilyKind::TauEKStar, 3).unwrap();
        assert_eq!(e, vec![(1, 1), (2, 5), (3, -3), (4, -3), (5, 9)]);
        let e = closed_form_exponents(FamilyKind::FrakTEK, 3).unwrap();
        assert_eq!(e[1], (2, 2));
        let e = closed_form_exponents(FamilyKind::FrakTEK, 2).unwrap();
        assert_eq!(e.iter().map(|t| t.1).collect::<Vec<_>>(), vec![1, 1, 0, 0, -1, 1, -1, 0]);
    }

    #[test]
    fn factorizations_hold_for_k_2_to_8() {
        for kind in [FamilyKind::TauEKStar, FamilyKind::FrakTEK, FamilyKind::FrakTEKStar] {
            for k in 2..=8 {
                let r = verify_factorization(&fam(kind, k)).unwrap();
                assert!(r.passed());
                assert_eq!(r.residual[0], "1");
                assert!(r.residual[1..].iter().all(|c| c == "0"), "{kind} {k}");
            }
        }
    }

    #[test]
    fn residual_is_nonzero_past_the_checked_range() {
        // the x⁶ coefficient of a starred family is not cleared by five factors
        let r = factorization_report::<i128>(&fam(FamilyKind::FrakTEKStar, 2), 9).unwrap();
        assert!(r.passed());
        assert!(r.residual[6..].iter().any(|c| c != "0"));
    }

    #[test]
    fn wrong_exponents_are_named() {
        let bell: Series = bell_series(&fam(FamilyKind::FrakTEK, 2), 8).unwrap();
        let wrong = bell.mul(&Series::binomial_factor(1, 1, 8).unwrap()).unwrap();
        // only the ζ(s) factor removed: x² survives
        assert_eq!(wrong.first_nonconstant(), Some(2));
    }

    #[test]
    fn bigint_coefficients() {
        let f = fam(FamilyKind::FrakTEKStar, 8);
        let big = derive_zeta_exponents(&bell_series::<BigInt>(&f, 12).unwrap(), ZetaBase::HeckeZ)
            .unwrap();
        let small = derive_zeta_exponents(&bell_series::<i128>(&f, 12).unwrap(), ZetaBase::HeckeZ)
            .unwrap();
        assert_eq!(big.terms, small.terms);
    }

    proptest! {
        #[test]
        fn binomial_factors_are_inverse(m in 1usize..6, e in -40i64..40, t in 1usize..24) {
            let a = Series::binomial_factor(m, e, t).unwrap();
            let b = Series::binomial_factor(m, -e, t).unwrap();
            prop_assert_eq!(a.mul(&b).unwrap(), Series::one(t));
        }

        #[test]
        fn derive_then_recompose(tail in proptest::collection::vec(-20i64..20, 1..10)) {
            let mut v = vec![1];
            v.extend(tail);
            let series = s(&v);
            let d = derive_zeta_exponents(&series, ZetaBase::Zeta).unwrap();
            prop_assert!(d.remainder.is_one());
            prop_assert_eq!(d.recompose().unwrap(), series);
        }
    }
}

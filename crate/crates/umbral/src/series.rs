//! Truncated formal power series over `Rat` in the variable t.
//!
//! A `Series` stores exactly `precision` ordinary coefficients: the series
//! is known mod t^precision and nothing more. Binary operations truncate
//! to the minimum precision of their operands, so precision loss is always
//! explicit, never silently padded with fictitious zeros.
//!
//! Storage is by ordinary coefficients; the exponential-generating-function
//! view is the `egf` accessor (egf(i) = i! * coeff(i)).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{factorial, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>, // len == precision >= 1, trailing zeros retained
}

impl Series {
    /// Builds a series from ascending ordinary coefficients, padded or
    /// truncated to exactly `precision` entries. Panics if precision is 0.
    pub fn from_coeffs(mut coeffs: Vec<Rat>, precision: usize) -> Self {
        assert!(precision >= 1, "series precision must be at least 1");
        coeffs.resize(precision, Rat::zero());
        Series { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Series::from_coeffs(Vec::new(), precision)
    }

    pub fn one(precision: usize) -> Self {
        Series::constant(Rat::one(), precision)
    }

    pub fn constant(c: Rat, precision: usize) -> Self {
        Series::from_coeffs(vec![c], precision)
    }

    /// The delta series t.
    pub fn t(precision: usize) -> Self {
        Series::monomial(1, Rat::one(), precision)
    }

    /// c * t^deg, truncated away if deg >= precision.
    pub fn monomial(deg: usize, c: Rat, precision: usize) -> Self {
        let mut s = Series::zero(precision);
        if deg < precision {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Prefix of e^(y t): ordinary coefficient i is y^i / i!.
    pub fn exp_scaled(y: &Rat, precision: usize) -> Self {
        let mut coeffs = Vec::with_capacity(precision);
        let mut term = Rat::one();
        for i in 0..precision {
            if i > 0 {
                term = term * y.clone() / Rat::from_int(i as i64);
            }
            coeffs.push(term.clone());
        }
        Series { coeffs }
    }

    /// Prefix of e^t.
    pub fn exp(precision: usize) -> Self {
        Series::exp_scaled(&Rat::one(), precision)
    }

    /// Prefix of e^t - 1 (a delta series).
    pub fn expm1(precision: usize) -> Self {
        let mut s = Series::exp(precision);
        s.coeffs[0] = Rat::zero();
        s
    }

    /// Prefix of 1 - e^(-t) (a delta series).
    pub fn one_minus_exp_neg(precision: usize) -> Self {
        let mut s = Series::exp_scaled(&Rat::from_int(-1), precision);
        for c in s.coeffs.iter_mut() {
            *c = -c.clone();
        }
        s.coeffs[0] = Rat::zero();
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Ordinary coefficient of t^i. Panics beyond stored precision: the
    /// value there is genuinely unknown, not zero.
    pub fn coeff(&self, i: usize) -> Rat {
        assert!(
            i < self.precision(),
            "coefficient {i} beyond stored precision {}",
            self.precision()
        );
        self.coeffs[i].clone()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// EGF coefficient a_i = i! * coeff(i).
    pub fn egf(&self, i: usize) -> Rat {
        factorial(i) * self.coeff(i)
    }

    /// Index of the first nonzero stored coefficient; None if the series
    /// vanishes to stored precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// Shrinks to `precision` coefficients. Panics if asked to grow: the
    /// missing coefficients do not exist.
    pub fn truncated(&self, precision: usize) -> Series {
        assert!(
            precision >= 1 && precision <= self.precision(),
            "cannot extend a series from precision {} to {precision}",
            self.precision()
        );
        Series {
            coeffs: self.coeffs[..precision].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact quotient as a power series. Both operands are shifted down by
    /// order(denominator) first, so quotients like t^2 / t or the
    /// cancelling 1/(e^t - 1)^m cases work; a quotient that would be a
    /// genuine Laurent series is an error, never a silent truncation.
    ///
    /// Result precision: min(both) - order(denominator).
    pub fn div(&self, den: &Series) -> Result<Series> {
        let d = den.order().ok_or(Error::DivisionByZeroSeries)?;
        let prec = self.precision().min(den.precision());
        match self.order() {
            Some(o) if o < d => return Err(Error::OrderMismatch { den_order: d }),
            _ => {}
        }
        if prec <= d {
            return Err(Error::PrecisionExhausted {
                have: prec,
                need: d + 1,
            });
        }
        let out_prec = prec - d;
        // Shift both down by d; the denominator is now invertible.
        let num: Vec<Rat> = (d..prec)
            .map(|i| {
                if i < self.precision() {
                    self.coeffs[i].clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let den: Vec<Rat> = (d..prec).map(|i| den.coeffs[i].clone()).collect();
        let inv0 = den[0].recip();
        let mut out = vec![Rat::zero(); out_prec];
        for i in 0..out_prec {
            let mut acc = num[i].clone();
            for j in 1..=i {
                acc -= &den[j] * &out[i - j];
            }
            out[i] = acc * inv0.clone();
        }
        Ok(Series { coeffs: out })
    }

    /// 1 / self; requires order 0.
    pub fn recip(&self) -> Result<Series> {
        match self.order() {
            Some(0) => Series::one(self.precision()).div(self),
            found => Err(Error::NotInvertibleSeries { found }),
        }
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// the reciprocal and so require an invertible base.
    pub fn int_pow(&self, exp: i64) -> Result<Series> {
        if exp < 0 {
            return self.recip()?.int_pow(-exp);
        }
        let mut acc = Series::one(self.precision());
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// outer(inner(t)) by Horner substitution; the inner series must have a
    /// zero constant term or the substitution would not truncate.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let prec = self.precision().min(inner.precision());
        if *inner == Series::t(inner.precision()) {
            return Ok(self.truncated(prec));
        }
        let inner = inner.truncated(prec);
        let mut acc = Series::zero(prec);
        for c in self.coeffs[..prec].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c.clone();
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series: the unique g with
    /// self(g(t)) = t mod t^precision, found by solving coefficientwise.
    pub fn reversion(&self) -> Result<Series> {
        match self.order() {
            Some(1) => {}
            found => return Err(Error::NotDeltaSeries { found }),
        }
        let n = self.precision();
        let inv1 = self.coeffs[1].recip();
        let mut rev = Series::zero(n);
        if n > 1 {
            rev.coeffs[1] = inv1.clone();
        }
        for m in 2..n {
            // With rev known through t^(m-1), the discrepancy of
            // self(rev) at t^m is linear in the unknown coefficient.
            let partial = self.truncated(m + 1).compose(&rev.truncated(m + 1))?;
            rev.coeffs[m] = -(partial.coeffs[m].clone() * inv1.clone());
        }
        Ok(rev)
    }

    /// Termwise d/dt; costs one coefficient of precision.
    pub fn deriv(&self) -> Result<Series> {
        if self.precision() < 2 {
            return Err(Error::PrecisionExhausted {
                have: self.precision(),
                need: 2,
            });
        }
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rat::from_int(i as i64))
                .collect(),
        })
    }

    /// Termwise antiderivative with zero constant term; gains one
    /// coefficient of precision.
    pub fn antideriv(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.precision() + 1);
        coeffs.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / &Rat::from_int(i as i64 + 1));
        }
        Series { coeffs }
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let prec = self.precision().min(rhs.precision());
        Series {
            coeffs: (0..prec)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let prec = self.precision().min(rhs.precision());
        Series {
            coeffs: (0..prec)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let prec = self.precision().min(rhs.precision());
        let mut coeffs = vec![Rat::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(prec - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Wire format: {"var": "t", "precision": N, "coeffs": [...]} ascending,
// exactly N entries.
impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Series", 3)?;
        st.serialize_field("var", "t")?;
        st.serialize_field("precision", &self.precision())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(default)]
            #[allow(dead_code)]
            var: Option<String>,
            precision: usize,
            coeffs: Vec<Rat>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.precision == 0 {
            return Err(serde::de::Error::custom("series precision must be >= 1"));
        }
        Ok(Series::from_coeffs(repr.coeffs, repr.precision))
    }
}

/// A truncated series in t whose coefficients are polynomials in x; the
/// carrier for two-variable generating functions. The EGF coefficient of
/// t^n is a polynomial obtained as n! times the stored one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySeries {
    coeffs: Vec<Poly>, // len == precision >= 1
}

impl PolySeries {
    pub fn from_scalar(s: &Series) -> Self {
        PolySeries {
            coeffs: s
                .coeffs()
                .iter()
                .map(|c| Poly::constant(c.clone()))
                .collect(),
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff_poly(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    /// n! times the stored coefficient of t^n.
    pub fn egf_poly(&self, n: usize) -> Poly {
        self.coeffs[n].scale(&factorial(n))
    }

    /// Multiplication by the prefix of e^(x t): coefficient i becomes
    /// sum_j coeff(i - j) * x^j / j!.
    pub fn mul_exp_xt(&self) -> PolySeries {
        let prec = self.precision();
        let mut out = vec![Poly::zero(); prec];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut weight = Rat::one();
            for j in 0..prec - i {
                if j > 0 {
                    weight = weight / Rat::from_int(j as i64);
                }
                let term = p.scale(&weight) * Poly::monomial(j, Rat::one());
                out[i + j] = &out[i + j] + &term;
            }
        }
        PolySeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[(i64, i64)], prec: usize) -> Series {
        Series::from_coeffs(
            coeffs.iter().map(|&(p, q)| Rat::ratio(p, q)).collect(),
            prec,
        )
    }

    fn ints(coeffs: &[i64], prec: usize) -> Series {
        Series::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect(), prec)
    }

    #[test]
    fn add_cancellation_and_identity() {
        let a = ints(&[1, 1], 4);
        let b = ints(&[1, -1], 4);
        assert_eq!(&a + &b, ints(&[2], 4));
        assert_eq!(&a + &Series::zero(4), a);
    }

    #[test]
    fn add_exp_prefixes() {
        // Coefficientwise oracle: doubling every entry of (1, 1, 1/2).
        let e = s(&[(1, 1), (1, 1), (1, 2)], 3);
        assert_eq!(&e + &e, s(&[(2, 1), (2, 1), (1, 1)], 3));
    }

    #[test]
    fn mul_basics() {
        let t = Series::t(4);
        assert_eq!(&t * &t, Series::monomial(2, Rat::one(), 4));
        let a = ints(&[1, 1], 4);
        let b = ints(&[1, -1], 4);
        assert_eq!(&a * &b, ints(&[1, 0, -1], 4));
    }

    #[test]
    fn mul_exp_by_exp_neg_is_one() {
        // Hand-convolution oracle at N = 8: the product telescopes to 1.
        let n = 8;
        let e = Series::exp(n);
        let e_neg = Series::exp_scaled(&Rat::from_int(-1), n);
        let mut oracle = vec![Rat::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                oracle[i + j] += e.coeff(i) * e_neg.coeff(j);
            }
        }
        assert_eq!(&e * &e_neg, Series::from_coeffs(oracle, n));
        assert_eq!(&e * &e_neg, Series::one(n));
    }

    #[test]
    fn min_precision_propagates() {
        let a = ints(&[1, 2, 3], 3);
        let b = ints(&[1], 6);
        assert_eq!((&a + &b).precision(), 3);
        assert_eq!((&a * &b).precision(), 3);
    }

    #[test]
    fn div_monomial_shift() {
        let t2 = Series::monomial(2, Rat::one(), 5);
        let t = Series::t(5);
        assert_eq!(t2.div(&t).unwrap(), Series::t(4));
    }

    #[test]
    fn div_expm1_by_t() {
        // Long-division oracle to N = 6: (e^t - 1)/t has coefficients
        // 1/(i+1)!.
        let q = Series::expm1(7).div(&Series::t(7)).unwrap();
        assert_eq!(
            q,
            s(&[(1, 1), (1, 2), (1, 6), (1, 24), (1, 120), (1, 720)], 6)
        );
    }

    #[test]
    fn div_t_by_expm1_gives_bernoulli_egf() {
        // Ordinary coefficients are B_n / n!; the first few are known.
        let q = Series::t(7).div(&Series::expm1(7)).unwrap();
        assert_eq!(
            q,
            s(&[(1, 1), (-1, 2), (1, 12), (0, 1), (-1, 720), (0, 1)], 6)
        );
    }

    #[test]
    fn div_errors() {
        let t = Series::t(5);
        let one = Series::one(5);
        assert_eq!(one.div(&Series::zero(5)), Err(Error::DivisionByZeroSeries));
        assert_eq!(one.div(&t), Err(Error::OrderMismatch { den_order: 1 }));
        // A zero numerator divides cleanly by anything nonzero.
        assert_eq!(Series::zero(5).div(&t).unwrap(), Series::zero(4));
    }

    #[test]
    fn int_pow_cases() {
        let f = ints(&[1, 1], 5);
        assert_eq!(f.int_pow(0).unwrap(), Series::one(5));
        assert_eq!(f.int_pow(2).unwrap(), ints(&[1, 2, 1], 5));
        // Inverse pair: (t/(e^t-1))^(-1) = (e^t-1)/t.
        let n = 8;
        let ratio = Series::t(n).div(&Series::expm1(n)).unwrap();
        let back = ratio.int_pow(-1).unwrap();
        assert_eq!(back, Series::expm1(n).div(&Series::t(n)).unwrap());
    }

    #[test]
    fn compose_identity_outer() {
        let g = s(&[(0, 1), (2, 1), (-1, 3)], 5);
        assert_eq!(Series::t(5).compose(&g).unwrap(), g);
    }

    #[test]
    fn compose_polylog_one_collapses() {
        // Termwise expansion oracle: substituting 1 - e^(-t) into
        // sum t^n / n gives exactly t at any precision.
        let n = 8;
        let mut log_coeffs = vec![Rat::zero()];
        for i in 1..n {
            log_coeffs.push(Rat::ratio(1, i as i64));
        }
        let outer = Series::from_coeffs(log_coeffs, n);
        let inner = Series::one_minus_exp_neg(n);
        assert_eq!(outer.compose(&inner).unwrap(), Series::t(n));
    }

    #[test]
    fn compose_square_outer() {
        // outer = t^2, inner = t + t^2 -> t^2 + 2t^3 + t^4
        let outer = Series::monomial(2, Rat::one(), 5);
        let inner = ints(&[0, 1, 1], 5);
        assert_eq!(outer.compose(&inner).unwrap(), ints(&[0, 0, 1, 2, 1], 5));
    }

    #[test]
    fn compose_rejects_constant_term() {
        let outer = Series::t(4);
        let inner = Series::one(4);
        assert_eq!(outer.compose(&inner), Err(Error::CompositionConstantTerm));
    }

    #[test]
    fn reversion_of_t() {
        assert_eq!(Series::t(6).reversion().unwrap(), Series::t(6));
    }

    #[test]
    fn reversion_of_expm1() {
        // The inverse of e^t - 1 is log(1 + t): t - t^2/2 + t^3/3 - ...
        let n = 8;
        let rev = Series::expm1(n).reversion().unwrap();
        let mut expected = vec![Rat::zero()];
        for i in 1..n {
            expected.push(Rat::ratio(if i % 2 == 1 { 1 } else { -1 }, i as i64));
        }
        assert_eq!(rev, Series::from_coeffs(expected, n));
        assert_eq!(Series::expm1(n).compose(&rev).unwrap(), Series::t(n));
    }

    #[test]
    fn reversion_of_geometric() {
        // t/(1-t) reverts to t/(1+t); checked by composing back to t.
        let n = 8;
        let f = Series::t(n)
            .div(&(&Series::one(n) - &Series::monomial(1, Rat::one(), n)))
            .unwrap();
        let expected: Vec<Rat> = (0..n)
            .map(|i| match i {
                0 => Rat::zero(),
                _ => Rat::from_int(if i % 2 == 1 { 1 } else { -1 }),
            })
            .collect();
        let rev = f.reversion().unwrap();
        assert_eq!(rev, Series::from_coeffs(expected, n));
        assert_eq!(f.compose(&rev).unwrap(), Series::t(n));
    }

    #[test]
    fn reversion_rejects_non_delta() {
        assert!(matches!(
            Series::one(5).reversion(),
            Err(Error::NotDeltaSeries { found: Some(0) })
        ));
        assert!(matches!(
            Series::monomial(2, Rat::one(), 5).reversion(),
            Err(Error::NotDeltaSeries { found: Some(2) })
        ));
    }

    #[test]
    fn deriv_and_antideriv() {
        let t2 = Series::monomial(2, Rat::one(), 5);
        assert_eq!(
            t2.deriv().unwrap(),
            Series::monomial(1, Rat::from_int(2), 4)
        );
        assert_eq!(Series::one(4).deriv().unwrap(), Series::zero(3));
        assert_eq!(
            Series::constant(Rat::one(), 1).deriv(),
            Err(Error::PrecisionExhausted { have: 1, need: 2 })
        );
        // e^t loses its top coefficient and shifts down.
        let e = Series::exp(6);
        assert_eq!(e.deriv().unwrap(), Series::exp(5));
        // Antiderivative basics.
        assert_eq!(Series::one(3).antideriv(), Series::t(4));
        assert_eq!(
            Series::monomial(1, Rat::from_int(2), 3).antideriv(),
            Series::monomial(2, Rat::one(), 4)
        );
        // Fundamental theorem within precision.
        let f = s(&[(3, 1), (1, 2), (-2, 7)], 3);
        let mut reconstructed = f.deriv().unwrap().antideriv();
        reconstructed.coeffs[0] = f.coeff(0);
        assert_eq!(reconstructed, f);
    }

    #[test]
    fn egf_accessor() {
        let e = Series::exp(6);
        for i in 0..6 {
            assert_eq!(e.egf(i), Rat::one());
        }
    }

    #[test]
    fn order_cases() {
        assert_eq!(Series::zero(3).order(), None);
        assert_eq!(Series::t(3).order(), Some(1));
        assert_eq!(Series::one(3).order(), Some(0));
    }

    #[test]
    fn serde_round_trip() {
        let q = Series::t(4).div(&Series::expm1(4)).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"var":"t","precision":3,"coeffs":["1","-1/2","1/12"]}"#
        );
        let back: Series = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn poly_series_exp_xt() {
        // Starting from the scalar series 1, multiplying by e^(xt) makes
        // the EGF coefficient of t^n equal to x^n.
        let ps = PolySeries::from_scalar(&Series::one(5)).mul_exp_xt();
        for n in 0..5 {
            assert_eq!(ps.egf_poly(n), Poly::monomial(n, Rat::one()));
        }
    }
}

//! Dense univariate polynomials over `Rat` in the umbral variable x.
//!
//! Canonical form never stores trailing zero coefficients; the zero
//! polynomial is the empty list and its degree is `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{binomial, Rat};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable x itself.
    pub fn x() -> Self {
        Poly::monomial(1, Rat::one())
    }

    /// c * x^deg.
    pub fn monomial(deg: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^j (zero beyond the stored length).
    pub fn coeff(&self, j: usize) -> Rat {
        self.coeffs.get(j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x (shift all degrees up by one).
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    /// d/dx.
    pub fn deriv(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * &Rat::from_int(j as i64))
                .collect(),
        )
    }

    /// p(x + y), re-expanded exactly in x.
    pub fn shift(&self, y: &Rat) -> Poly {
        if y.is_zero() {
            return self.clone();
        }
        // Horner in (x + y): acc = acc * (x + y) + c_j, from the top down.
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            let mut next = acc.mul_x() + acc.scale(y);
            next = next + Poly::constant(c.clone());
            acc = next;
        }
        acc
    }

    /// Expansion of (x + y)^n, handy for binomial re-expansions.
    pub fn binomial_power(y: &Rat, n: usize) -> Poly {
        let mut coeffs = Vec::with_capacity(n + 1);
        for l in 0..=n {
            coeffs.push(binomial(n, l as i64) * y.pow((n - l) as i64));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            coeffs.push(self.coeff(j) + rhs.coeff(j));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            coeffs.push(self.coeff(j) - rhs.coeff(j));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    /// Human-readable form, highest degree first: "x^2 + x + 1/6".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if j == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Wire format: {"var": "x", "coeffs": ["p/q", ...]} ascending.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Poly", 2)?;
        st.serialize_field("var", "x")?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(default)]
            #[allow(dead_code)]
            var: Option<String>,
            coeffs: Vec<Rat>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Ok(Poly::from_coeffs(repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn zero_degree_is_none() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn trailing_zeros_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
    }

    #[test]
    fn mul_and_eval_agree() {
        let a = p(&[1, 1]); // 1 + x
        let b = p(&[-1, 1]); // -1 + x
        let prod = &a * &b; // x^2 - 1
        assert_eq!(prod, p(&[-1, 0, 1]));
        let at = Rat::ratio(3, 2);
        assert_eq!(prod.eval(&at), a.eval(&at) * b.eval(&at));
    }

    #[test]
    fn shift_square() {
        // (x + 1)^2 = x^2 + 2x + 1
        let sq = Poly::monomial(2, Rat::one());
        assert_eq!(sq.shift(&Rat::one()), p(&[1, 2, 1]));
        assert_eq!(sq.shift(&Rat::zero()), sq);
    }

    #[test]
    fn shift_cube_negative() {
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
        let cube = Poly::monomial(3, Rat::one());
        assert_eq!(cube.shift(&Rat::from_int(-1)), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn deriv_basic() {
        assert_eq!(p(&[7, 0, 1]).deriv(), p(&[0, 2]));
        assert_eq!(p(&[3]).deriv(), Poly::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(
            Poly::from_coeffs(vec![Rat::ratio(-1, 2), Rat::one()]).to_string(),
            "x - 1/2"
        );
        assert_eq!(p(&[1, -3, 2]).to_string(), "2*x^2 - 3*x + 1");
    }

    #[test]
    fn json_round_trip() {
        let q = Poly::from_coeffs(vec![Rat::ratio(1, 6), Rat::one(), Rat::one()]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"var":"x","coeffs":["1/6","1","1"]}"#);
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }
}

//! The polynomial and number families: higher-order Bernoulli, poly-
//! Bernoulli, the mixed family combining both, and the Euler and
//! Frobenius-Euler targets used for changes of basis.
//!
//! The central object is the mixed family s_n(x; r, k), the coefficient
//! family of
//!
//!   (t/(e^t - 1))^r * Li_k(1 - e^(-t))/(1 - e^(-t)) * e^(x t),
//!
//! computed here by four independent routes:
//!
//! * path A — operator route: apply the inverted Sheffer g to x^n;
//! * path B — binomial convolution of the two factor families;
//! * path C — finite-difference average of shifted Bernoulli polynomials;
//! * path D — Stirling-weighted expansion over the Bernoulli family.
//!
//! All four must agree exactly; the identity suite audits that over a
//! parameter grid. Both r and k range over all integers: negative r goes
//! through series inversion, negative k only changes the rational weights
//! 1/(m+1)^k, and the substitution u = 1 - e^(-t) has order 1 so every
//! truncation is finite.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::Poly;
use crate::rat::{binomial, factorial, Rat};
use crate::series::{PolySeries, Series};
use crate::stirling::{StirlingKind, StirlingTable};
use crate::umbral::{apply_operator, ShefferPair};

/// Parameter bundle for family requests: degree n, Bernoulli order r,
/// polylogarithm index k, target-basis order s, and the Frobenius-Euler
/// parameter lambda (which must stay != 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: usize,
    pub r: i64,
    pub k: i64,
    pub s: usize,
    pub lambda: Rat,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            n: 0,
            r: 0,
            k: 1,
            s: 0,
            lambda: Rat::from_int(-1),
        }
    }
}

fn xn(n: usize) -> Poly {
    Poly::monomial(n, Rat::one())
}

/// Li_k(1 - e^(-t)) truncated at `precision`. The substitution has order
/// one, so only the first `precision` terms of the polylogarithm sum
/// contribute, whatever the sign of k.
pub fn polylog_series(k: i64, precision: usize) -> Series {
    let u = Series::one_minus_exp_neg(precision);
    let mut acc = Series::zero(precision);
    let mut power = u.clone();
    for n in 1..precision as i64 {
        acc = &acc + &power.scale(&Rat::from_int(n).pow(-k));
        if (n + 1) < precision as i64 {
            power = &power * &u;
        }
    }
    acc
}

/// Li_k(1 - e^(-t)) / (1 - e^(-t)) at full `precision`, built directly as
/// sum_m u^m / (m+1)^k so no precision is lost to division. The division
/// route must agree; a test pins that.
pub fn polybernoulli_kernel(k: i64, precision: usize) -> Series {
    let u = Series::one_minus_exp_neg(precision);
    let mut acc = Series::zero(precision);
    let mut power = Series::one(precision);
    for m in 0..precision as i64 {
        acc = &acc + &power.scale(&Rat::from_int(m + 1).pow(-k));
        if (m + 1) < precision as i64 {
            power = &power * &u;
        }
    }
    acc
}

/// (t/(e^t - 1))^r at `precision`; r may be negative.
pub fn bernoulli_kernel(r: i64, precision: usize) -> Result<Series> {
    let base = Series::t(precision + 1).div(&Series::expm1(precision + 1))?;
    base.int_pow(r)
}

/// The full mixed kernel (t/(e^t - 1))^r * Li_k(1 - e^(-t))/(1 - e^(-t)).
pub fn mixed_kernel(r: i64, k: i64, precision: usize) -> Result<Series> {
    Ok(&bernoulli_kernel(r, precision)? * &polybernoulli_kernel(k, precision))
}

/// The Sheffer g of the mixed family: the reciprocal of the mixed kernel,
/// i.e. ((e^t - 1)/t)^r * (1 - e^(-t))/Li_k(1 - e^(-t)).
pub fn mixed_g(r: i64, k: i64, precision: usize) -> Result<Series> {
    mixed_kernel(r, k, precision)?.recip()
}

/// Appell pair generating the mixed family.
pub fn mixed_pair(r: i64, k: i64, precision: usize) -> Result<ShefferPair> {
    ShefferPair::appell(mixed_g(r, k, precision)?)
}

/// ((e^t - 1)/t)^s, the Sheffer g of the order-s Bernoulli family; s may
/// be negative.
pub fn bernoulli_g(s: i64, precision: usize) -> Result<Series> {
    bernoulli_kernel(-s, precision)
}

pub fn bernoulli_order_pair(s: i64, precision: usize) -> Result<ShefferPair> {
    ShefferPair::appell(bernoulli_g(s, precision)?)
}

/// ((e^t + 1)/2)^s, the Sheffer g of the order-s Euler family.
pub fn euler_g(s: usize, precision: usize) -> Result<Series> {
    let half_sum = (&Series::exp(precision) + &Series::one(precision)).scale(&Rat::ratio(1, 2));
    half_sum.int_pow(s as i64)
}

pub fn euler_pair(s: usize, precision: usize) -> Result<ShefferPair> {
    ShefferPair::appell(euler_g(s, precision)?)
}

/// ((e^t - lambda)/(1 - lambda))^s, the Sheffer g of the order-s
/// Frobenius-Euler family. Requires lambda != 1.
pub fn frobenius_euler_g(s: usize, lambda: &Rat, precision: usize) -> Result<Series> {
    if lambda == &Rat::one() {
        return Err(crate::error::Error::LambdaUnit);
    }
    let scale = (Rat::one() - lambda.clone()).recip();
    let base =
        (&Series::exp(precision) - &Series::constant(lambda.clone(), precision)).scale(&scale);
    base.int_pow(s as i64)
}

pub fn frobenius_euler_pair(s: usize, lambda: &Rat, precision: usize) -> Result<ShefferPair> {
    ShefferPair::appell(frobenius_euler_g(s, lambda, precision)?)
}

/// Order-r Bernoulli polynomial of degree n.
pub fn higher_bernoulli(n: usize, r: i64) -> Result<Poly> {
    apply_operator(&bernoulli_kernel(r, n + 2)?, &xn(n))
}

/// Order-r Bernoulli number (the polynomial at x = 0).
pub fn higher_bernoulli_number(n: usize, r: i64) -> Result<Rat> {
    Ok(bernoulli_kernel(r, n + 2)?.egf(n))
}

pub fn higher_bernoulli_at(n: usize, r: i64, at: &Rat) -> Result<Rat> {
    Ok(higher_bernoulli(n, r)?.eval(at))
}

/// Poly-Bernoulli polynomial of degree n and index k.
pub fn poly_bernoulli(n: usize, k: i64) -> Result<Poly> {
    apply_operator(&polybernoulli_kernel(k, n + 2), &xn(n))
}

pub fn poly_bernoulli_number(n: usize, k: i64) -> Rat {
    polybernoulli_kernel(k, n + 2).egf(n)
}

pub fn poly_bernoulli_at(n: usize, k: i64, at: &Rat) -> Result<Rat> {
    Ok(poly_bernoulli(n, k)?.eval(at))
}

/// Order-s Euler polynomial of degree n.
pub fn euler_poly(n: usize, s: usize) -> Result<Poly> {
    apply_operator(&euler_g(s, n + 2)?.recip()?, &xn(n))
}

pub fn euler_poly_at(n: usize, s: usize, at: &Rat) -> Result<Rat> {
    Ok(euler_poly(n, s)?.eval(at))
}

/// Order-s Frobenius-Euler polynomial of degree n at parameter lambda.
pub fn frobenius_euler_poly(n: usize, s: usize, lambda: &Rat) -> Result<Poly> {
    apply_operator(&frobenius_euler_g(s, lambda, n + 2)?.recip()?, &xn(n))
}

pub fn frobenius_euler_poly_at(n: usize, s: usize, lambda: &Rat, at: &Rat) -> Result<Rat> {
    Ok(frobenius_euler_poly(n, s, lambda)?.eval(at))
}

/// The two-variable truncation whose EGF coefficient of t^n is the mixed
/// polynomial s_n(x; r, k).
pub fn mixed_gf(r: i64, k: i64, precision: usize) -> Result<PolySeries> {
    Ok(PolySeries::from_scalar(&mixed_kernel(r, k, precision)?).mul_exp_xt())
}

/// Path A: the operator route, (1/g)(t) applied to x^n.
pub fn mixed_poly_gf_path(n: usize, r: i64, k: i64) -> Result<Poly> {
    apply_operator(&mixed_kernel(r, k, n + 2)?, &xn(n))
}

/// Path B: binomial convolution of poly-Bernoulli numbers against order-r
/// Bernoulli polynomials. Both convolution orders are computed; they must
/// agree (exact arithmetic, so a mismatch is an internal bug).
pub fn mixed_poly_conv_path(n: usize, r: i64, k: i64) -> Result<Poly> {
    let pb = polybernoulli_kernel(k, n + 2);
    let hb = bernoulli_kernel(r, n + 2)?;
    let mut first = Poly::zero();
    let mut second = Poly::zero();
    for l in 0..=n {
        let c = binomial(n, l as i64);
        // sum_l C(n,l) * B_(n-l)[k] * HB_l[r](x)
        let weight = &c * &pb.egf(n - l);
        first = &first + &apply_operator(&hb, &xn(l))?.scale(&weight);
        // sum_l C(n,l) * HB_(n-l)[r] * B_l[k](x)
        let weight = &c * &hb.egf(n - l);
        second = &second + &apply_operator(&pb, &xn(l))?.scale(&weight);
    }
    assert_eq!(
        first, second,
        "convolution orders disagree (n={n} r={r} k={k})"
    );
    Ok(first)
}

/// Path C: finite-difference average of shifted order-r Bernoulli
/// polynomials,
///
///   s_n = sum_(m=0..n) (m+1)^(-k) sum_(j=0..m) (-1)^j C(m,j) HB_n[r](x-j).
pub fn mixed_poly_shift_avg_path(n: usize, r: i64, k: i64) -> Result<Poly> {
    let base = higher_bernoulli(n, r)?;
    let shifted: Vec<Poly> = (0..=n as i64)
        .map(|j| base.shift(&Rat::from_int(-j)))
        .collect();
    let mut acc = Poly::zero();
    for m in 0..=n {
        let outer = Rat::from_int(m as i64 + 1).pow(-k);
        let mut inner = Poly::zero();
        for (j, shift) in shifted.iter().enumerate().take(m + 1) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let w = binomial(m, j as i64) * Rat::from_int(sign);
            inner = &inner + &shift.scale(&w);
        }
        acc = &acc + &inner.scale(&outer);
    }
    Ok(acc)
}

fn stirling_path_weight(n: usize, j: usize, k: i64, table: &StirlingTable) -> Rat {
    let mut w = Rat::zero();
    for m in 0..=n - j {
        let sign = if (n + m + j).is_multiple_of(2) { 1 } else { -1 };
        w += Rat::from_int(sign)
            * factorial(m)
            * Rat::from_int(m as i64 + 1).pow(-k)
            * table.value(n - j, m);
    }
    w * binomial(n, j as i64)
}

/// Path D: Stirling-weighted expansion over the order-r Bernoulli family,
///
///   s_n = sum_(j=0..n) { sum_(m=0..n-j) (-1)^(n-m-j)/(m+1)^k C(n,j) m!
///         S2(n-j,m) } HB_j[r](x).
pub fn mixed_poly_stirling_path(n: usize, r: i64, k: i64) -> Result<Poly> {
    let table = StirlingTable::new(StirlingKind::Second, n);
    let hb = bernoulli_kernel(r, n + 2)?;
    let mut acc = Poly::zero();
    for j in 0..=n {
        let w = stirling_path_weight(n, j, k, &table);
        if !w.is_zero() {
            acc = &acc + &apply_operator(&hb, &xn(j))?.scale(&w);
        }
    }
    Ok(acc)
}

/// The fully expanded monomial form of path D: coefficient of x^l is
///
///   sum_(j=l..n) sum_(m=0..n-j) (-1)^(n-m-j) C(n,j) C(j,l) m!/(m+1)^k
///   S2(n-j,m) HB_(j-l)[r],
///
/// exposed separately so audits can check it independently of the
/// Bernoulli-basis form.
pub fn mixed_stirling_monomial_coeffs(n: usize, r: i64, k: i64) -> Result<Vec<Rat>> {
    let table = StirlingTable::new(StirlingKind::Second, n);
    let hb = bernoulli_kernel(r, n + 2)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let mut c = Rat::zero();
        for j in l..=n {
            let mut inner = Rat::zero();
            for m in 0..=n - j {
                let sign = if (n + m + j).is_multiple_of(2) { 1 } else { -1 };
                inner += Rat::from_int(sign)
                    * factorial(m)
                    * Rat::from_int(m as i64 + 1).pow(-k)
                    * table.value(n - j, m);
            }
            c += inner * binomial(n, j as i64) * binomial(j, l as i64) * hb.egf(j - l);
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Mixed number s_n(0; r, k).
pub fn mixed_number(n: usize, r: i64, k: i64) -> Result<Rat> {
    Ok(mixed_kernel(r, k, n + 2)?.egf(n))
}

pub fn mixed_poly_at(n: usize, r: i64, k: i64, at: &Rat) -> Result<Rat> {
    Ok(mixed_poly_gf_path(n, r, k)?.eval(at))
}

/// A mixed family with one shared kernel and all polynomials up to a
/// degree bound precomputed. Grid audits touch the same (r, k) family
/// hundreds of times; this keeps them linear instead of quadratic.
#[derive(Clone, Debug)]
pub struct MixedFamily {
    r: i64,
    k: i64,
    kernel: Series,
    polys: Vec<Poly>,
}

impl MixedFamily {
    pub fn new(r: i64, k: i64, max_n: usize) -> Result<Self> {
        let kernel = mixed_kernel(r, k, max_n + 2)?;
        let polys = (0..=max_n)
            .map(|n| apply_operator(&kernel, &xn(n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedFamily {
            r,
            k,
            kernel,
            polys,
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn kernel(&self) -> &Series {
        &self.kernel
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn number(&self, n: usize) -> Rat {
        self.kernel.egf(n)
    }

    pub fn at(&self, n: usize, y: &Rat) -> Rat {
        self.polys[n].eval(y)
    }
}

//! The umbral algebra: formal power series acting on polynomials both as
//! linear functionals and as linear operators, Sheffer sequence generation
//! from a (g, f) pair, and exact connection coefficients between Sheffer
//! bases.
//!
//! The two actions of a series f(t) = sum a_k t^k / k! are
//!
//! * functional: <f | x^n> = a_n, so <t^k | x^n> = n! when n = k, else 0;
//! * operator:   t^k p(x) = p^(k)(x), extended linearly.
//!
//! Every operation needs the series to carry strictly more coefficients
//! than the polynomial degree it is paired against; the working-precision
//! contract throughout the crate is N = n + 2 for a target degree n.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{factorial, Rat};
use crate::series::Series;

fn require_precision(f: &Series, p: &Poly) -> Result<()> {
    match p.degree() {
        Some(d) if f.precision() <= d => Err(Error::PrecisionExhausted {
            have: f.precision(),
            need: d + 1,
        }),
        _ => Ok(()),
    }
}

/// The linear functional <f(t) | p(x)> = sum_j p_j * j! * coeff_j(f).
pub fn functional_apply(f: &Series, p: &Poly) -> Result<Rat> {
    require_precision(f, p)?;
    let mut acc = Rat::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c.clone() * f.egf(j);
        }
    }
    Ok(acc)
}

/// The operator action f(t) p(x) = sum_k coeff_k(f) * p^(k)(x).
pub fn apply_operator(f: &Series, p: &Poly) -> Result<Poly> {
    require_precision(f, p)?;
    let mut acc = Poly::zero();
    let mut deriv = p.clone();
    for k in 0.. {
        if deriv.is_zero() {
            break;
        }
        let c = f.coeff(k);
        if !c.is_zero() {
            acc = &acc + &deriv.scale(&c);
        }
        deriv = deriv.deriv();
    }
    Ok(acc)
}

/// The (g, f) datum of a Sheffer sequence: g invertible (order 0), f a
/// delta series (order 1). Every family in this crate is Appell (f = t),
/// but the engine itself handles the general case.
#[derive(Clone, Debug)]
pub struct ShefferPair {
    g: Series,
    f: Series,
}

impl ShefferPair {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        match g.order() {
            Some(0) => {}
            found => return Err(Error::NotInvertibleSeries { found }),
        }
        match f.order() {
            Some(1) => {}
            found => return Err(Error::NotDeltaSeries { found }),
        }
        Ok(ShefferPair { g, f })
    }

    /// Appell pair (g, t) at the precision of g.
    pub fn appell(g: Series) -> Result<Self> {
        let prec = g.precision();
        ShefferPair::new(g, Series::t(prec))
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    /// Usable precision of the pair.
    pub fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }

    pub fn is_appell(&self) -> bool {
        self.f == Series::t(self.f.precision())
    }
}

/// The degree-n member of the Sheffer sequence for `pair`.
///
/// Appell pairs take the direct route s_n = (1/g)(t) x^n; general pairs go
/// through the compositional inverse of f.
pub fn sheffer_polynomial(pair: &ShefferPair, n: usize) -> Result<Poly> {
    if pair.is_appell() {
        let ginv = pair.g.recip()?;
        apply_operator(&ginv, &Poly::monomial(n, Rat::one()))
    } else {
        sheffer_polynomial_via_reversion(pair, n)
    }
}

/// Generating-function route: expand 1/g(rev f)(t) * e^(y rev f(t)) and read
/// the degree-n coefficient as a polynomial in y. Works for any pair and
/// doubles as an independent cross-check of the Appell shortcut.
pub fn sheffer_polynomial_via_reversion(pair: &ShefferPair, n: usize) -> Result<Poly> {
    let prec = pair.precision();
    if prec <= n {
        return Err(Error::PrecisionExhausted {
            have: prec,
            need: n + 1,
        });
    }
    let fbar = pair.f.truncated(prec).reversion()?;
    let base = pair.g.truncated(prec).compose(&fbar)?.recip()?;
    // coefficient of y^j in s_n(y) is n!/j! * [t^n] (base * fbar^j)
    let n_fact = factorial(n);
    let mut acc = base;
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let c = &n_fact / &factorial(j) * acc.coeff(n);
        coeffs.push(c);
        if j < n {
            acc = &acc * &fbar;
        }
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Checks the lowering identity f(t) s_n(x) = n s_(n-1)(x) exactly.
pub fn sheffer_deriv_check(pair: &ShefferPair, n: usize) -> Result<bool> {
    assert!(n >= 1, "lowering check needs n >= 1");
    let s_n = sheffer_polynomial(pair, n)?;
    let s_prev = sheffer_polynomial(pair, n - 1)?;
    let lowered = apply_operator(&pair.f, &s_n)?;
    Ok(lowered == s_prev.scale(&Rat::from_int(n as i64)))
}

/// One step of the Appell recurrence s_(n+1) = (x - g'(t)/g(t)) s_n.
pub fn appell_recurrence_step(pair: &ShefferPair, s_n: &Poly) -> Result<Poly> {
    if !pair.is_appell() {
        return Err(Error::NotAppell);
    }
    let log_deriv = pair.g.deriv()?.div(&pair.g)?;
    let correction = apply_operator(&log_deriv, s_n)?;
    Ok(&s_n.mul_x() - &correction)
}

/// Connection coefficients c_(n,0..n) expressing the degree-n member of
/// `from`'s sequence in `to`'s sequence:
///
///   s_n(x) = sum_m c_(n,m) r_m(x),
///   c_(n,m) = (1/m!) < h(rev f)/g(rev f) * l(rev f)^m | x^n >
///
/// with (g, f) = `from` and (h, l) = `to`.
pub fn connection_coefficients(from: &ShefferPair, to: &ShefferPair, n: usize) -> Result<Vec<Rat>> {
    let prec = from.precision().min(to.precision());
    if prec <= n {
        return Err(Error::PrecisionExhausted {
            have: prec,
            need: n + 1,
        });
    }
    let fbar = from.f.truncated(prec).reversion()?;
    let numer = to.g.truncated(prec).compose(&fbar)?;
    let denom = from.g.truncated(prec).compose(&fbar)?;
    let base = numer.div(&denom)?;
    let l_of_fbar = to.f.truncated(prec).compose(&fbar)?;
    let n_fact = factorial(n);
    let mut acc = base;
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        out.push(&n_fact / &factorial(m) * acc.coeff(n));
        if m < n {
            acc = &acc * &l_of_fbar;
        }
    }
    Ok(out)
}

/// A change of basis between two Sheffer sequences: coefficients plus the
/// target-basis polynomials, with the recombination already verified.
#[derive(Clone, Debug)]
pub struct BasisExpansion {
    pub coefficients: Vec<Rat>,
    pub basis: Vec<Poly>,
}

impl BasisExpansion {
    pub fn recombined(&self) -> Poly {
        self.coefficients
            .iter()
            .zip(&self.basis)
            .fold(Poly::zero(), |acc, (c, p)| &acc + &p.scale(c))
    }
}

/// Expands the degree-n member of `from` in the sequence of `to` and
/// asserts the recombination reproduces it exactly. A mismatch signals an
/// internal bug.
pub fn expand_in_basis(n: usize, from: &ShefferPair, to: &ShefferPair) -> Result<BasisExpansion> {
    let coefficients = connection_coefficients(from, to, n)?;
    let mut basis = Vec::with_capacity(n + 1);
    for m in 0..=n {
        basis.push(sheffer_polynomial(to, m)?);
    }
    let expansion = BasisExpansion {
        coefficients,
        basis,
    };
    if expansion.recombined() != sheffer_polynomial(from, n)? {
        return Err(Error::BasisMismatch { degree: n });
    }
    Ok(expansion)
}

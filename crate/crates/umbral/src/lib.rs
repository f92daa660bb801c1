//! Exact umbral calculus over the rationals.
//!
//! The crate has four layers:
//!
//! * [`rat`], [`poly`], [`series`] — the algebra core: arbitrary-precision
//!   rationals, dense polynomials in x, and truncated formal power series
//!   in t with explicit per-series precision;
//! * [`umbral`] — series acting on polynomials as linear functionals and
//!   as operators, Sheffer sequence generation, connection coefficients;
//! * [`families`], [`stirling`] — the concrete polynomial families
//!   (higher-order Bernoulli, poly-Bernoulli, the mixed family, Euler,
//!   Frobenius-Euler) and Stirling number triangles;
//! * [`audit`] — a registry of identities satisfied by these families,
//!   each checked exactly over a parameter grid, with machine-readable
//!   reports and golden expected statuses.
//!
//! Everything is exact: there is no floating point in the crate, and all
//! values are immutable after construction, so sharing across threads is
//! safe.

pub mod audit;
pub mod error;
pub mod families;
pub mod poly;
pub mod rat;
pub mod series;
pub mod stirling;
pub mod umbral;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rat::{binomial, factorial, falling_factorial, Rat};
pub use series::{PolySeries, Series};
pub use umbral::{
    appell_recurrence_step, apply_operator, connection_coefficients, expand_in_basis,
    functional_apply, sheffer_deriv_check, sheffer_polynomial, BasisExpansion, ShefferPair,
};

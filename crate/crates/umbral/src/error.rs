use thiserror::Error;

/// Errors raised by series, operator, and family computations.
///
/// Everything here is a precondition violation, never a rounding issue:
/// the arithmetic itself is exact.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by a series that is zero to its stored precision.
    #[error("division by a series that is zero to stored precision")]
    DivisionByZeroSeries,

    /// The quotient would be a genuine Laurent series: the denominator
    /// vanishes to higher order than the numerator.
    #[error(
        "denominator order {den_order} exceeds numerator order; quotient would be a Laurent series"
    )]
    OrderMismatch { den_order: usize },

    /// An operation required a delta series (order exactly 1).
    #[error("expected a delta series (order 1), found order {found:?}")]
    NotDeltaSeries { found: Option<usize> },

    /// An operation required an invertible series (order 0).
    #[error("expected an invertible series (order 0), found order {found:?}")]
    NotInvertibleSeries { found: Option<usize> },

    /// Composition outer ∘ inner requires the inner series to have a zero
    /// constant term; otherwise the substitution does not truncate.
    #[error("composition inner series has a nonzero constant term")]
    CompositionConstantTerm,

    /// A series was too short for the requested extraction.
    #[error("series precision {have} is too short (need at least {need})")]
    PrecisionExhausted { have: usize, need: usize },

    /// An Appell-only operation was handed a pair whose f(t) is not t.
    #[error("operation requires an Appell pair (f(t) = t)")]
    NotAppell,

    /// The Frobenius–Euler parameter must satisfy lambda != 1.
    #[error("Frobenius-Euler parameter lambda must not equal 1")]
    LambdaUnit,

    /// A change-of-basis recombination failed to reproduce the source
    /// polynomial. This signals an internal bug, not a user error.
    #[error("basis recombination mismatch at degree {degree}")]
    BasisMismatch { degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

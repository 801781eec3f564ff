//! Exact arithmetic kernel.
//!
//! Everything above this module works over the rationals: [`Rational`] is an
//! arbitrary-precision fraction, [`Polynomial`] a dense univariate polynomial
//! with rational coefficients and [`TruncatedSeries`] a formal power series
//! known up to a fixed order.

mod poly;
mod rational;
mod series;

pub use poly::Polynomial;
pub use rational::{
    binomial, factorial, format_rational, int, parse_rational, rat, rational_from_f64, to_f64,
    Rational,
};
pub use series::TruncatedSeries;

use thiserror::Error;

/// Failures of the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not reversible: need f(0) = 0 and f'(0) != 0")]
    NotReversible,
    #[error("bad constant term for {op}: expected {expected}")]
    BadConstantTerm { op: &'static str, expected: &'static str },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("series is not divisible by t")]
    NotDivisibleByT,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

//! Shift-invariant operators on `Q[x]`, stored by their symbol `B̄(t)` so
//! that the operator is `B̄(∂) = sum b̂_n/n! ∂^n`.
//!
//! Delta operators additionally carry the compositional inverse `B` of the
//! symbol, which generates the basic sequence through `exp(x B(t))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{factorial, AlgebraError, Polynomial, Rational, TruncatedSeries};
use crate::functionals::{FunctionalError, MomentFunctional};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("truncation order {order} is too low for degree {degree}")]
    OrderTooLow { degree: usize, order: usize },
    #[error("not a delta operator: {0}")]
    NotDelta(&'static str),
    #[error("difference step must be nonzero")]
    ZeroStep,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// `B̄(∂)` for a truncated symbol `B̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftInvariantOp {
    symbol: TruncatedSeries,
}

impl ShiftInvariantOp {
    pub fn from_symbol(symbol: TruncatedSeries) -> Self {
        ShiftInvariantOp { symbol }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_symbol(TruncatedSeries::one(order))
    }

    pub fn derivative(order: usize) -> Self {
        Self::from_symbol(TruncatedSeries::t(order))
    }

    /// `T_a`, symbol `e^{at}`.
    pub fn shift(a: &Rational, order: usize) -> Self {
        Self::from_symbol(TruncatedSeries::exp_linear(order, a))
    }

    pub fn symbol(&self) -> &TruncatedSeries {
        &self.symbol
    }

    pub fn order(&self) -> usize {
        self.symbol.order()
    }

    /// `sum_n (b̂_n/n!) p^{(n)}`. The symbol must be known past `deg p`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, OperatorError> {
        let Some(deg) = p.degree() else {
            return Ok(Polynomial::zero());
        };
        if self.order() <= deg {
            return Err(OperatorError::OrderTooLow { degree: deg, order: self.order() });
        }
        let mut acc = Polynomial::zero();
        let mut dp = p.clone();
        for n in 0..=deg {
            let c = self.symbol.coeff(n);
            if !c.is_zero() {
                acc = &acc + &dp.scale(c);
            }
            dp = dp.derive();
        }
        Ok(acc)
    }

    /// Operator product (product of symbols).
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_symbol(self.symbol.series_mul(&other.symbol))
    }

    pub fn pow(&self, k: usize) -> Self {
        Self::from_symbol(self.symbol.pow(k))
    }

    /// Defined when the symbol has a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, OperatorError> {
        Ok(Self::from_symbol(self.symbol.recip()?))
    }
}

/// `op_apply`
pub fn op_apply(op: &ShiftInvariantOp, p: &Polynomial) -> Result<Polynomial, OperatorError> {
    op.apply(p)
}

/// Recovers the symbol of a black-box shift-invariant rule as
/// `sum rule(x^n)(0) t^n / n!`.
pub fn op_indicator(rule: impl Fn(&Polynomial) -> Polynomial, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_egf(order, |n| rule(&Polynomial::monomial(n)).eval(&Rational::zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Derivative,
    /// `Δ_h p = p(x+h) - p(x)`, symbol `e^{ht} - 1`.
    Difference(Rational),
    /// Polynomial symbol from its exponential coefficients `b̂_1, b̂_2, …`.
    Series(Vec<Rational>),
    /// Arbitrary truncated symbol.
    Symbol,
}

/// A delta operator `𝔔 = B̄(∂)` with `B̄(0) = 0`, `B̄'(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaOperator {
    kind: DeltaKind,
    bbar: TruncatedSeries,
    b: TruncatedSeries,
}

impl DeltaOperator {
    fn build(kind: DeltaKind, bbar: TruncatedSeries) -> Result<Self, OperatorError> {
        if bbar.order() < 2 {
            return Err(OperatorError::OrderTooLow { degree: 1, order: bbar.order() });
        }
        if !bbar.coeff(0).is_zero() {
            return Err(OperatorError::NotDelta("symbol has a nonzero constant term"));
        }
        if bbar.coeff(1).is_zero() {
            return Err(OperatorError::NotDelta("b̂_1 = 0"));
        }
        let b = bbar.reversion()?;
        Ok(DeltaOperator { kind, bbar, b })
    }

    pub fn derivative(order: usize) -> Self {
        Self::build(DeltaKind::Derivative, TruncatedSeries::t(order.max(2))).unwrap()
    }

    pub fn difference(h: Rational, order: usize) -> Result<Self, OperatorError> {
        if h.is_zero() {
            return Err(OperatorError::ZeroStep);
        }
        let order = order.max(2);
        let bbar = &TruncatedSeries::exp_linear(order, &h) - &TruncatedSeries::one(order);
        Self::build(DeltaKind::Difference(h), bbar)
    }

    /// `B̄(t) = sum_{n>=1} b̂_n t^n / n!` from `bhat = [b̂_1, b̂_2, …]`.
    pub fn from_bhat(bhat: Vec<Rational>, order: usize) -> Result<Self, OperatorError> {
        let order = order.max(2);
        let bbar = TruncatedSeries::from_fn(order, |n| match n {
            0 => Rational::zero(),
            _ => bhat.get(n - 1).cloned().unwrap_or_else(Rational::zero) / fact(n),
        });
        Self::build(DeltaKind::Series(bhat), bbar)
    }

    pub fn from_symbol(bbar: TruncatedSeries) -> Result<Self, OperatorError> {
        Self::build(DeltaKind::Symbol, bbar)
    }

    /// The same operator with its series rebuilt at another truncation order.
    /// A raw symbol can only be truncated, never extended.
    pub fn at_order(&self, order: usize) -> Result<Self, OperatorError> {
        match &self.kind {
            DeltaKind::Derivative => Ok(Self::derivative(order)),
            DeltaKind::Difference(h) => Self::difference(h.clone(), order),
            DeltaKind::Series(bhat) => Self::from_bhat(bhat.clone(), order),
            DeltaKind::Symbol => {
                if order > self.order() {
                    Err(OperatorError::OrderTooLow { degree: order - 1, order: self.order() })
                } else {
                    Self::from_symbol(self.bbar.truncate(order))
                }
            }
        }
    }

    pub fn kind(&self) -> &DeltaKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.bbar.order()
    }

    /// `B̄`
    pub fn bbar(&self) -> &TruncatedSeries {
        &self.bbar
    }

    /// `B`, the compositional inverse of `B̄`.
    pub fn b(&self) -> &TruncatedSeries {
        &self.b
    }

    pub fn is_derivative(&self) -> bool {
        self.bbar == TruncatedSeries::t(self.order())
    }

    pub fn as_op(&self) -> ShiftInvariantOp {
        ShiftInvariantOp::from_symbol(self.bbar.clone())
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, OperatorError> {
        self.as_op().apply(p)
    }

    /// `𝔔^k(p)`
    pub fn apply_pow(&self, k: usize, p: &Polynomial) -> Result<Polynomial, OperatorError> {
        let mut out = p.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.apply(&out)?;
        }
        Ok(out)
    }

    /// `q_0, …, q_nmax`
    pub fn basic_sequence(&self, nmax: usize) -> Result<Vec<Polynomial>, OperatorError> {
        basic_sequence(self, nmax)
    }

    /// `(∂/B̄(∂)) ∫_{x0}^x p`
    pub fn left_inverse(&self, x0: &Rational, p: &Polynomial) -> Result<Polynomial, OperatorError> {
        delta_left_inverse(self, x0, p)
    }
}

impl fmt::Display for DeltaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match &self.kind {
            DeltaKind::Derivative => write!(f, "derivative"),
            DeltaKind::Difference(h) => write!(f, "difference h={h}"),
            DeltaKind::Series(bhat) => write!(f, "series [{}]", list(bhat)),
            DeltaKind::Symbol => {
                let mut bhat: Vec<Rational> =
                    (1..self.order()).map(|n| self.bbar.egf_coeff(n)).collect();
                while bhat.len() > 1 && bhat.last().is_some_and(Zero::is_zero) {
                    bhat.pop();
                }
                write!(f, "series [{}]", list(&bhat))
            }
        }
    }
}

/// `q_n(x) = n! [t^n] exp(x B(t))`.
///
/// With `E(t) = exp(x B(t)) = sum E_n t^n`, the relation `E' = x B' E` gives
/// `n E_n = x sum_{k=1}^n k b_k E_{n-k}`, a recurrence on polynomials in `x`.
pub fn basic_sequence(q: &DeltaOperator, nmax: usize) -> Result<Vec<Polynomial>, OperatorError> {
    if q.order() <= nmax {
        return Err(OperatorError::OrderTooLow { degree: nmax, order: q.order() });
    }
    let x = Polynomial::monomial(1);
    let b = q.b();
    let mut e: Vec<Polynomial> = vec![Polynomial::one()];
    for n in 1..=nmax {
        let mut acc = Polynomial::zero();
        for k in 1..=n {
            let c = b.coeff(k) * Rational::from_integer(BigInt::from(k));
            if !c.is_zero() {
                acc = &acc + &e[n - k].scale(&c);
            }
        }
        let acc = &x * &acc;
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    Ok(e.into_iter().enumerate().map(|(n, p)| p.scale(&fact(n))).collect())
}

/// `𝔔^{-1}_{x0}(p) = (∂/B̄(∂)) ∫_{x0}^x p`, a right inverse of `𝔔` on `Q[x]`.
pub fn delta_left_inverse(
    q: &DeltaOperator,
    x0: &Rational,
    p: &Polynomial,
) -> Result<Polynomial, OperatorError> {
    let prim = p.integrate_from(x0);
    let symbol = q.bbar().div_t()?.recip()?;
    ShiftInvariantOp::from_symbol(symbol).apply(&prim)
}

/// `j(L)`: the operator `p ↦ (x ↦ L(T_x p))`, whose symbol is the indicator series of `L`.
pub fn functional_to_op(
    l: &MomentFunctional,
    order: usize,
) -> Result<ShiftInvariantOp, OperatorError> {
    Ok(ShiftInvariantOp::from_symbol(l.indicator_series(order)?))
}

/// The functional `p ↦ op(p)(0)`; moments beyond the symbol's order are zero.
pub fn op_to_functional(op: &ShiftInvariantOp) -> MomentFunctional {
    MomentFunctional::from_moments((0..op.order()).map(|n| op.symbol().egf_coeff(n)).collect())
}

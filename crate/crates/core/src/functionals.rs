//! Linear functionals on polynomials, encoded by their moments `L_n = L(x^n)`.
//!
//! A [`MomentFunctional`] is an immutable tree: atoms (point evaluation,
//! the uniform measure on `[0,1]`, explicit moment lists, closed-form rules,
//! the accelerator moments, the Touchard functional) combined by translation,
//! dilation, convolution powers, ramification and mixtures. Moments are
//! computed on demand and memoized per node, so a functional can be cloned
//! and shared across threads freely.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    binomial, factorial, rational_from_f64, to_f64, AlgebraError, Polynomial, Rational,
    TruncatedSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionalError {
    #[error("convolution power must be at least 1, got {0}")]
    BadExponent(usize),
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("dilate_power needs moments supported on multiples of {modulus}, but L_{index} != 0")]
    UnsupportedDilatePower { index: usize, modulus: usize },
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("mixture needs at least one term")]
    EmptyMixture,
    #[error("normalizing value F(lambda) vanishes")]
    ZeroDenominator,
    #[error("series for moment {index} did not reach the tail bound")]
    TailNotConvergent { index: usize },
    #[error("moment {index} of {functional} is not rational")]
    NonRationalMoment { index: usize, functional: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type Rule = Arc<dyn Fn(usize) -> Rational + Send + Sync>;
type FloatRule = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Eval(Rational),
    Uniform01,
    Moments(Vec<Rational>),
    ExpZ(Rational),
    /// `n!/Gamma(1 + n/(d+1))`, rational only on the `(d+1)`-grid.
    Accelerator(usize),
    Rule { label: String, rule: Rule },
    EntireSeries { label: String, coeff: FloatRule, lambda: f64, tail_bound: f64 },
    Translate(MomentFunctional, Rational),
    Dilate(MomentFunctional, Rational),
    DilatePower(MomentFunctional, Rational, usize),
    Power(MomentFunctional, usize),
    Ramify(MomentFunctional, usize),
    Mix(Vec<(Rational, MomentFunctional)>),
    Convolve(Vec<MomentFunctional>),
    Labeled(String, MomentFunctional),
}

struct Node {
    kind: Kind,
    cache: Mutex<BTreeMap<usize, Rational>>,
}

/// A linear functional `L` on `Q[x]`, codified by its moments.
#[derive(Clone)]
pub struct MomentFunctional {
    node: Arc<Node>,
}

impl fmt::Debug for MomentFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MomentFunctional({self})")
    }
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

impl MomentFunctional {
    fn from_kind(kind: Kind) -> Self {
        MomentFunctional {
            node: Arc::new(Node { kind, cache: Mutex::new(BTreeMap::new()) }),
        }
    }

    /// `p ↦ p(a)`
    pub fn eval(a: Rational) -> Self {
        Self::from_kind(Kind::Eval(a))
    }

    /// `p ↦ ∫_0^1 p(s) ds`
    pub fn uniform01() -> Self {
        Self::from_kind(Kind::Uniform01)
    }

    /// Finitely many explicit moments; all later moments are zero.
    pub fn from_moments(moments: Vec<Rational>) -> Self {
        Self::from_kind(Kind::Moments(moments))
    }

    /// A closed-form moment rule `n ↦ L_n`.
    pub fn from_rule(
        label: impl Into<String>,
        rule: impl Fn(usize) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self::from_kind(Kind::Rule { label: label.into(), rule: Arc::new(rule) })
    }

    /// The functional induced by `F = e^z` at `lambda`:
    /// `L(p) = e^{-lambda} sum_k p(k) lambda^k / k!`, indicator `exp(lambda(e^t - 1))`.
    pub fn exp_z(lambda: Rational) -> Self {
        Self::from_kind(Kind::ExpZ(lambda))
    }

    /// `p ↦ ∫_0^∞ p(s) C_{d+1}(s) ds`, moments `n!/Γ(1 + n/(d+1))`.
    ///
    /// Only the moments on the `(d+1)`-grid are rational, so in practice
    /// this is used through [`ramify`](Self::ramify).
    pub fn accelerator(d: usize) -> Self {
        Self::from_kind(Kind::Accelerator(d))
    }

    /// Functional of an entire function `F(z) = sum f_k z^k` at `lambda`:
    /// `L(p) = (1/F(lambda)) sum_k p(k) f_k lambda^k`.
    ///
    /// The sums are evaluated in floating point until the terms drop below
    /// `tail_bound`, so the resulting moments are not exact.
    pub fn entire_series(
        label: impl Into<String>,
        coeff: impl Fn(usize) -> f64 + Send + Sync + 'static,
        lambda: f64,
        tail_bound: f64,
    ) -> Result<Self, FunctionalError> {
        let f = Self::from_kind(Kind::EntireSeries {
            label: label.into(),
            coeff: Arc::new(coeff),
            lambda,
            tail_bound,
        });
        f.moment(0)?;
        Ok(f)
    }

    /// Attaches a display label (used for catalog families) without changing moments.
    pub fn labeled(label: impl Into<String>, inner: MomentFunctional) -> Self {
        Self::from_kind(Kind::Labeled(label.into(), inner))
    }

    /// `L ∘ T_a`
    pub fn translate(&self, a: Rational) -> Self {
        Self::from_kind(Kind::Translate(self.clone(), a))
    }

    /// `L ∘ H_beta`, i.e. `p ↦ L(p(x/beta))`.
    pub fn dilate(&self, beta: Rational) -> Result<Self, FunctionalError> {
        if beta.is_zero() {
            return Err(FunctionalError::ZeroDilation);
        }
        Ok(Self::from_kind(Kind::Dilate(self.clone(), beta)))
    }

    /// `L ∘ H_beta` for an irrational `beta` with `beta^m = r`, valid when
    /// the moments of `L` live on multiples of `m`: `L_{km} ↦ L_{km} / r^k`.
    pub fn dilate_power(&self, r: Rational, m: usize) -> Result<Self, FunctionalError> {
        if r.is_zero() {
            return Err(FunctionalError::ZeroDilation);
        }
        if m == 0 {
            return Err(FunctionalError::BadModulus);
        }
        let f = Self::from_kind(Kind::DilatePower(self.clone(), r, m));
        // Eager check on a finite window; later indices are checked lazily.
        for n in (0..4 * m + 8).filter(|n| n % m != 0) {
            f.moment(n)?;
        }
        Ok(f)
    }

    /// k-fold convolution power; indicator is the k-th power of this one.
    pub fn power(&self, k: usize) -> Result<Self, FunctionalError> {
        if k < 1 {
            return Err(FunctionalError::BadExponent(k));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        Ok(Self::from_kind(Kind::Power(self.clone(), k)))
    }

    /// Keeps the moments indexed by multiples of `m`, zeroes the rest.
    pub fn ramify(&self, m: usize) -> Result<Self, FunctionalError> {
        if m == 0 {
            return Err(FunctionalError::BadModulus);
        }
        if m == 1 {
            return Ok(self.clone());
        }
        Ok(Self::from_kind(Kind::Ramify(self.clone(), m)))
    }

    /// `sum w_i L_i`
    pub fn mix(terms: Vec<(Rational, MomentFunctional)>) -> Result<Self, FunctionalError> {
        if terms.is_empty() {
            return Err(FunctionalError::EmptyMixture);
        }
        Ok(Self::from_kind(Kind::Mix(terms)))
    }

    /// Convolution of several functionals (product of indicator series).
    pub fn convolve(factors: Vec<MomentFunctional>) -> Result<Self, FunctionalError> {
        match factors.len() {
            0 => Err(FunctionalError::EmptyMixture),
            1 => Ok(factors.into_iter().next().unwrap()),
            _ => Ok(Self::from_kind(Kind::Convolve(factors))),
        }
    }

    /// False when any moment comes from a floating-point summation.
    pub fn is_exact(&self) -> bool {
        match &self.node.kind {
            Kind::EntireSeries { .. } => false,
            Kind::Eval(_)
            | Kind::Uniform01
            | Kind::Moments(_)
            | Kind::ExpZ(_)
            | Kind::Accelerator(_)
            | Kind::Rule { .. } => true,
            Kind::Translate(l, _)
            | Kind::Dilate(l, _)
            | Kind::DilatePower(l, _, _)
            | Kind::Power(l, _)
            | Kind::Ramify(l, _)
            | Kind::Labeled(_, l) => l.is_exact(),
            Kind::Mix(t) => t.iter().all(|(_, l)| l.is_exact()),
            Kind::Convolve(f) => f.iter().all(MomentFunctional::is_exact),
        }
    }

    /// `L_n = L(x^n)`
    pub fn moment(&self, n: usize) -> Result<Rational, FunctionalError> {
        if let Some(v) = self.node.cache.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let fresh = self.compute(n)?;
        let mut cache = self.node.cache.lock().unwrap();
        for (k, v) in fresh {
            cache.entry(k).or_insert(v);
        }
        Ok(cache[&n].clone())
    }

    /// `L_0, …, L_{count-1}`
    pub fn moments(&self, count: usize) -> Result<Vec<Rational>, FunctionalError> {
        if count > 0 {
            // Prefix-computing nodes fill the whole cache in one go.
            self.moment(count - 1)?;
        }
        (0..count).map(|n| self.moment(n)).collect()
    }

    /// `L(p) = sum c_k L_k`
    pub fn apply(&self, p: &Polynomial) -> Result<Rational, FunctionalError> {
        let mut acc = Rational::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * self.moment(k)?;
            }
        }
        Ok(acc)
    }

    /// `L(e^{xt}) = sum_{n<order} L_n t^n / n!`
    pub fn indicator_series(&self, order: usize) -> Result<TruncatedSeries, FunctionalError> {
        let m = self.moments(order)?;
        Ok(TruncatedSeries::from_egf(order, |n| m[n].clone()))
    }

    /// Returns the moments computed for index `n`; prefix-style nodes may
    /// return every index up to `n`.
    fn compute(&self, n: usize) -> Result<Vec<(usize, Rational)>, FunctionalError> {
        let one = |v: Rational| Ok(vec![(n, v)]);
        match &self.node.kind {
            Kind::Eval(a) => one(pow(a, n)),
            Kind::Uniform01 => one(Rational::new(BigInt::one(), BigInt::from(n + 1))),
            Kind::Moments(v) => one(v.get(n).cloned().unwrap_or_else(Rational::zero)),
            Kind::ExpZ(lambda) => Ok(touchard_prefix(lambda, n + 1)
                .into_iter()
                .enumerate()
                .collect()),
            Kind::Accelerator(d) => {
                let m = d + 1;
                if n % m == 0 {
                    one(fact(n) / fact(n / m))
                } else {
                    Err(FunctionalError::NonRationalMoment {
                        index: n,
                        functional: self.to_string(),
                    })
                }
            }
            Kind::Rule { rule, .. } => one(rule(n)),
            Kind::EntireSeries { coeff, lambda, tail_bound, .. } => {
                let denom = entire_sum(coeff.as_ref(), *lambda, 0, *tail_bound)
                    .ok_or(FunctionalError::TailNotConvergent { index: 0 })?;
                if denom.abs() < 1e-300 {
                    return Err(FunctionalError::ZeroDenominator);
                }
                let num = entire_sum(coeff.as_ref(), *lambda, n, *tail_bound)
                    .ok_or(FunctionalError::TailNotConvergent { index: n })?;
                let v = rational_from_f64(num / denom)
                    .ok_or(FunctionalError::TailNotConvergent { index: n })?;
                one(v)
            }
            Kind::Translate(l, a) => {
                let mut acc = Rational::zero();
                let mut apow = Rational::one();
                for j in (0..=n).rev() {
                    acc += Rational::from_integer(binomial(n, j)) * l.moment(j)? * &apow;
                    apow *= a;
                }
                one(acc)
            }
            Kind::Dilate(l, beta) => one(l.moment(n)? / pow(beta, n)),
            Kind::DilatePower(l, r, m) => {
                let v = l.moment(n)?;
                if n % m == 0 {
                    one(v / pow(r, n / m))
                } else if v.is_zero() {
                    one(v)
                } else {
                    Err(FunctionalError::UnsupportedDilatePower { index: n, modulus: *m })
                }
            }
            Kind::Ramify(l, m) => {
                if n % m == 0 {
                    one(l.moment(n)?)
                } else {
                    one(Rational::zero())
                }
            }
            Kind::Mix(terms) => {
                let mut acc = Rational::zero();
                for (w, l) in terms {
                    acc += w * l.moment(n)?;
                }
                one(acc)
            }
            Kind::Power(l, k) => {
                let s = l.indicator_series(n + 1)?.pow(*k);
                Ok((0..=n).map(|i| (i, s.egf_coeff(i))).collect())
            }
            Kind::Convolve(factors) => {
                let mut s = TruncatedSeries::one(n + 1);
                for l in factors {
                    s = s.series_mul(&l.indicator_series(n + 1)?);
                }
                Ok((0..=n).map(|i| (i, s.egf_coeff(i))).collect())
            }
            Kind::Labeled(_, l) => one(l.moment(n)?),
        }
    }
}

fn pow(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= a;
    }
    acc
}

/// Touchard polynomials at `lambda` by `T_{n+1} = lambda sum_k C(n,k) T_k`.
fn touchard_prefix(lambda: &Rational, count: usize) -> Vec<Rational> {
    let mut t: Vec<Rational> = Vec::with_capacity(count);
    if count == 0 {
        return t;
    }
    t.push(Rational::one());
    for n in 0..count.saturating_sub(1) {
        let mut acc = Rational::zero();
        for (k, tk) in t.iter().enumerate() {
            acc += Rational::from_integer(binomial(n, k)) * tk;
        }
        t.push(acc * lambda);
    }
    t
}

/// `sum_k k^n f_k lambda^k` in floating point. Stops once the terms have
/// shrunk below `tail_bound` and kept shrinking for a few steps.
fn entire_sum(coeff: &dyn Fn(usize) -> f64, lambda: f64, n: usize, tail_bound: f64) -> Option<f64> {
    const CAP: usize = 20_000;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut small_run = 0;
    let mut lam_pow = 1.0f64;
    for k in 0..CAP {
        let kn = if n == 0 { 1.0 } else { (k as f64).powi(n as i32) };
        let term = kn * coeff(k) * lam_pow;
        if !term.is_finite() {
            return None;
        }
        // Kahan summation
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= tail_bound * sum.abs().max(1.0) {
            small_run += 1;
            if small_run >= 8 && k > n {
                return Some(sum);
            }
        } else {
            small_run = 0;
        }
        lam_pow *= lambda;
    }
    None
}

impl fmt::Display for MomentFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node.kind {
            Kind::Eval(a) => write!(f, "eval({a})"),
            Kind::Uniform01 => write!(f, "uniform01"),
            Kind::Moments(v) => {
                let items: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "moments[{}]", items.join(", "))
            }
            Kind::ExpZ(l) => write!(f, "exp_z({l})"),
            Kind::Accelerator(d) => write!(f, "accelerator({d})"),
            Kind::Rule { label, .. } | Kind::EntireSeries { label, .. } => write!(f, "{label}"),
            Kind::Translate(l, a) => write!(f, "translate({l}, {a})"),
            Kind::Dilate(l, b) => write!(f, "dilate({l}, {b})"),
            Kind::DilatePower(l, r, m) => write!(f, "dilate_power({l}, {r}, {m})"),
            Kind::Power(l, k) => write!(f, "pow({l}, {k})"),
            Kind::Ramify(l, m) => write!(f, "ramify({l}, {m})"),
            Kind::Mix(terms) => {
                write!(f, "mix(")?;
                for (i, (w, l)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{w}*{l}")?;
                }
                write!(f, ")")
            }
            Kind::Convolve(fs) => {
                let items: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "conv({})", items.join(", "))
            }
            Kind::Labeled(label, _) => write!(f, "{label}"),
        }
    }
}

/// Approximate value of a moment as a double, handy for numeric checks.
pub fn moment_f64(l: &MomentFunctional, n: usize) -> Result<f64, FunctionalError> {
    l.moment(n).map(|v| to_f64(&v))
}

/// True when all of the first `count` moments agree exactly.
pub fn same_moments(
    a: &MomentFunctional,
    b: &MomentFunctional,
    count: usize,
) -> Result<bool, FunctionalError> {
    Ok(a.moments(count)? == b.moments(count)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const N: usize = 12;

    fn exp_series(order: usize, inner: &TruncatedSeries) -> TruncatedSeries {
        inner.truncate(order).exp().unwrap()
    }

    #[test]
    fn apply_examples() {
        let x2 = Polynomial::monomial(2);
        assert_eq!(MomentFunctional::uniform01().apply(&x2).unwrap(), rat(1, 3));
        // Gaussian moment oracle: (2j-1)!! read off exp(t^2/2)
        let gauss = exp_series(N, &TruncatedSeries::from_slice(N, &[int(0), int(0), rat(1, 2)]));
        let hermite = MomentFunctional::accelerator(1)
            .ramify(2)
            .unwrap()
            .dilate_power(int(2), 2)
            .unwrap();
        assert_eq!(hermite.apply(&Polynomial::monomial(4)).unwrap(), int(3));
        assert_eq!(hermite.indicator_series(N).unwrap(), gauss);
        let kummer11 = MomentFunctional::from_rule("kummer", |n| rat(1, n as i64 + 1));
        assert!(same_moments(&kummer11, &MomentFunctional::uniform01(), 20).unwrap());
    }

    #[test]
    fn indicator_examples() {
        let e = TruncatedSeries::exp_linear(N + 1, &int(1));
        let e1t = (&e - &TruncatedSeries::one(N + 1)).div_t().unwrap();
        assert_eq!(MomentFunctional::uniform01().indicator_series(N).unwrap(), e1t);

        let beta = rat(1, 3);
        let ae = MomentFunctional::mix(vec![
            (int(1) - &beta, MomentFunctional::eval(int(0))),
            (beta.clone(), MomentFunctional::eval(int(1))),
        ])
        .unwrap();
        let expected = &TruncatedSeries::one(N)
            + &(&TruncatedSeries::exp_linear(N, &int(1)) - &TruncatedSeries::one(N)).scale(&beta);
        assert_eq!(ae.indicator_series(N).unwrap(), expected);

        for d in 1..4 {
            let dh = MomentFunctional::accelerator(d).ramify(d + 1).unwrap();
            let target = exp_series(N, &TruncatedSeries::t(N).pow(d + 1));
            assert_eq!(dh.indicator_series(N).unwrap(), target);
        }
    }

    #[test]
    fn power_examples() {
        let u = MomentFunctional::uniform01();
        let u2 = u.power(2).unwrap();
        let i = u.indicator_series(N).unwrap();
        assert_eq!(u2.indicator_series(N).unwrap(), i.pow(2));

        let a = rat(2, 5);
        let p3 = MomentFunctional::eval(a.clone()).power(3).unwrap();
        let e3a = MomentFunctional::eval(a * int(3));
        assert!(same_moments(&p3, &e3a, N).unwrap());

        let beta = rat(1, 3);
        let ae = MomentFunctional::mix(vec![
            (int(1) - &beta, MomentFunctional::eval(int(0))),
            (beta.clone(), MomentFunctional::eval(int(1))),
        ])
        .unwrap();
        let binom = MomentFunctional::mix(
            (0..=2)
                .map(|j| {
                    let w = Rational::from_integer(binomial(2, j))
                        * pow(&beta, j)
                        * pow(&(int(1) - &beta), 2 - j);
                    (w, MomentFunctional::eval(int(j as i64)))
                })
                .collect(),
        )
        .unwrap();
        assert!(same_moments(&ae.power(2).unwrap(), &binom, N).unwrap());
        assert_eq!(u.power(0).unwrap_err(), FunctionalError::BadExponent(0));
    }

    #[test]
    fn translate_dilate_examples() {
        let a = rat(-3, 4);
        let t = MomentFunctional::eval(int(0)).translate(a.clone());
        assert!(same_moments(&t, &MomentFunctional::eval(a.clone()), N).unwrap());

        // indicator(L ∘ T_a) = e^{at} indicator(L)
        let u = MomentFunctional::uniform01();
        let lhs = u.translate(a.clone()).indicator_series(N).unwrap();
        let rhs = &TruncatedSeries::exp_linear(N, &a) * &u.indicator_series(N).unwrap();
        assert_eq!(lhs, rhs);

        // indicator(L ∘ H_beta)(t) = indicator(L)(t / beta)
        let beta = rat(5, 2);
        let lhs = u.dilate(beta.clone()).unwrap().indicator_series(N).unwrap();
        let rhs = u.indicator_series(N).unwrap().rescale_variable(&beta.recip());
        assert_eq!(lhs, rhs);
        assert_eq!(u.dilate(int(0)).unwrap_err(), FunctionalError::ZeroDilation);

        // d-Hermite base with beta^{d+1} = -1 gives exp(-t^{d+1})
        for d in 1..4 {
            let base = MomentFunctional::accelerator(d).ramify(d + 1).unwrap();
            let neg = base.dilate_power(int(-1), d + 1).unwrap();
            let target = exp_series(N, &TruncatedSeries::t(N).pow(d + 1).scale(&int(-1)));
            assert_eq!(neg.indicator_series(N).unwrap(), target);
        }
        assert!(matches!(
            u.dilate_power(int(2), 2),
            Err(FunctionalError::UnsupportedDilatePower { index: 1, modulus: 2 })
        ));
    }

    #[test]
    fn ramify_examples() {
        let e1 = MomentFunctional::eval(int(1));
        let r = e1.ramify(2).unwrap();
        assert_eq!(
            r.moments(6).unwrap(),
            vec![int(1), int(0), int(1), int(0), int(1), int(0)]
        );
        // indicator cosh t
        let cosh = TruncatedSeries::from_egf(N, |n| int(if n % 2 == 0 { 1 } else { 0 }));
        assert_eq!(r.indicator_series(N).unwrap(), cosh);
        assert!(same_moments(&e1.ramify(1).unwrap(), &e1, N).unwrap());
        assert_eq!(e1.ramify(0).unwrap_err(), FunctionalError::BadModulus);

        // (k(d+1))!/k! on the grid, zero elsewhere
        let r = MomentFunctional::accelerator(2).ramify(3).unwrap();
        assert_eq!(r.moment(6).unwrap(), int(360));
        assert_eq!(r.moment(4).unwrap(), int(0));
        assert!(matches!(
            MomentFunctional::accelerator(2).moment(4),
            Err(FunctionalError::NonRationalMoment { index: 4, .. })
        ));
    }

    #[test]
    fn mix_examples() {
        let beta = rat(2, 7);
        let ae = MomentFunctional::mix(vec![
            (int(1) - &beta, MomentFunctional::eval(int(0))),
            (beta.clone(), MomentFunctional::eval(int(1))),
        ])
        .unwrap();
        assert_eq!(ae.moment(0).unwrap(), int(1));
        for n in 1..N {
            assert_eq!(ae.moment(n).unwrap(), beta);
        }
        let euler = MomentFunctional::mix(vec![
            (rat(1, 2), MomentFunctional::eval(int(0))),
            (rat(1, 2), MomentFunctional::eval(int(1))),
        ])
        .unwrap();
        let half_one_plus_e = TruncatedSeries::from_egf(N, |n| if n == 0 { int(1) } else { rat(1, 2) });
        assert_eq!(euler.indicator_series(N).unwrap(), half_one_plus_e);
        assert_eq!(MomentFunctional::mix(vec![]).unwrap_err(), FunctionalError::EmptyMixture);
    }

    #[test]
    fn exp_z_examples() {
        let t1 = MomentFunctional::exp_z(int(1));
        // Bell numbers
        assert_eq!(t1.moments(6).unwrap(), vec![int(1), int(1), int(2), int(5), int(15), int(52)]);
        assert_eq!(MomentFunctional::exp_z(rat(3, 2)).moment(0).unwrap(), int(1));
        let em1 = &TruncatedSeries::exp_linear(N, &int(1)) - &TruncatedSeries::one(N);
        assert_eq!(t1.indicator_series(N).unwrap(), em1.exp().unwrap());
    }

    #[test]
    fn entire_series_matches_exp_z() {
        let lambda = 0.75;
        let f = MomentFunctional::entire_series(
            "entire(exp)",
            |k| 1.0 / (1..=k).map(|i| i as f64).product::<f64>(),
            lambda,
            1e-18,
        )
        .unwrap();
        assert!(!f.is_exact());
        let exact = MomentFunctional::exp_z(rat(3, 4));
        for n in 0..8 {
            let a = moment_f64(&f, n).unwrap();
            let b = moment_f64(&exact, n).unwrap();
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "n={n}: {a} vs {b}");
        }
        let zero = MomentFunctional::entire_series("entire(z)", |k| if k == 1 { 1.0 } else { 0.0 }, 0.0, 1e-18);
        assert_eq!(zero.unwrap_err(), FunctionalError::ZeroDenominator);
        let divergent = MomentFunctional::entire_series("entire(geo)", |_| 1.0, 2.0, 1e-18);
        assert!(matches!(divergent, Err(FunctionalError::TailNotConvergent { .. })));
    }

    #[test]
    fn linearity_and_display() {
        let l = MomentFunctional::uniform01().translate(rat(1, 2)).power(2).unwrap();
        let p1 = Polynomial::new(vec![int(1), int(-2), rat(3, 5)]);
        let p2 = Polynomial::new(vec![int(0), int(7), int(0), int(1)]);
        let c = rat(-5, 3);
        let sum = &p1 + &p2.scale(&c);
        assert_eq!(l.apply(&sum).unwrap(), l.apply(&p1).unwrap() + c * l.apply(&p2).unwrap());
        assert_eq!(l.to_string(), "pow(translate(uniform01, 1/2), 2)");
        let m = MomentFunctional::mix(vec![
            (rat(1, 2), MomentFunctional::eval(int(0))),
            (rat(1, 2), MomentFunctional::from_moments(vec![int(1), rat(1, 3)])),
        ])
        .unwrap();
        assert_eq!(m.to_string(), "mix(1/2*eval(0) + 1/2*moments[1, 1/3])");
    }
}

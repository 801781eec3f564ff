use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{factorial, Rational};
use super::AlgebraError;

/// Formal power series `sum_{n<N} c_n t^n + O(t^N)`.
///
/// The truncation order `N` is the length of the coefficient list and is
/// always positive. Binary operations truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

fn r(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..order).map(f).collect())
    }

    /// Series with exponential coefficients: `sum a_n t^n / n!`.
    pub fn from_egf(order: usize, mut a: impl FnMut(usize) -> Rational) -> Self {
        Self::from_fn(order, |n| a(n) / Rational::from_integer(factorial(n)))
    }

    /// Pads with zeros or truncates a coefficient list to `order`.
    pub fn from_slice(order: usize, coeffs: &[Rational]) -> Self {
        Self::from_fn(order, |n| coeffs.get(n).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series variable `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `e^{a t}`
    pub fn exp_linear(order: usize, a: &Rational) -> Self {
        let mut pw = Rational::one();
        Self::from_fn(order, |n| {
            let c = &pw / Rational::from_integer(factorial(n));
            pw *= a;
            c
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero past the order is NOT implied, so this
    /// panics when `n >= order`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `n! [t^n]`
    pub fn egf_coeff(&self, n: usize) -> Rational {
        &self.coeffs[n] * Rational::from_integer(factorial(n))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_slice(order.min(self.order()), &self.coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(c t)`
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &pw;
                    pw *= c;
                    v
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_fn(n.saturating_sub(1).max(1), |k| {
            if k + 1 < n {
                &self.coeffs[k + 1] * r(k + 1)
            } else {
                Rational::zero()
            }
        })
    }

    /// `f(t) / t`, one order lower. Requires `f(0) = 0` and order >= 2.
    pub fn div_t(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() || self.order() < 2 {
            return Err(AlgebraError::NotDivisibleByT);
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// `t^k f(t)` at the same order.
    pub fn mul_t_pow(&self, k: usize) -> Self {
        Self::from_fn(self.order(), |n| {
            if n >= k {
                self.coeffs[n - k].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Cauchy product truncated to the smaller order.
    pub fn series_mul(&self, g: &Self) -> Self {
        let n = self.order().min(g.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.series_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.series_mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse by `g_0 = 1/f_0`,
    /// `g_n = -(1/f_0) sum_{k=1}^n f_k g_{n-k}`.
    pub fn recip(&self) -> Result<Self, AlgebraError> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(AlgebraError::ZeroConstantTerm);
        }
        let inv0 = f0.recip();
        let n = self.order();
        let mut g: Vec<Rational> = Vec::with_capacity(n);
        g.push(inv0.clone());
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let fk = &self.coeffs[k];
                if !fk.is_zero() {
                    acc += fk * &g[m - k];
                }
            }
            g.push(-acc * &inv0);
        }
        Ok(Self::new(g))
    }

    /// `f(g(t))` by Horner's scheme. Requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self, AlgebraError> {
        if !g.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroInnerConstant);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(n, self.coeffs[n - 1].clone());
        for c in self.coeffs[..n - 1].iter().rev() {
            acc = acc.series_mul(&g);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse via Lagrange inversion:
    /// `[t^n] g = (1/n) [t^{n-1}] (t / f(t))^n`.
    pub fn reversion(&self) -> Result<Self, AlgebraError> {
        let n = self.order();
        if n < 2 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(AlgebraError::NotReversible);
        }
        // t / f(t) has order n - 1, which covers every coefficient needed.
        let h = self.div_t()?.recip()?;
        let mut out = vec![Rational::zero(); n];
        let mut hp = Self::one(h.order());
        for m in 1..n {
            hp = hp.series_mul(&h);
            out[m] = &hp.coeffs[m - 1] / r(m);
        }
        Ok(Self::new(out))
    }

    /// Formal exponential, `g' = f' g`. Requires `f(0) = 0`.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::BadConstantTerm { op: "exp", expected: "0" });
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n];
        g[0] = Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let fk = &self.coeffs[k];
                if !fk.is_zero() {
                    acc += fk * r(k) * &g[m - k];
                }
            }
            g[m] = acc / r(m);
        }
        Ok(Self::new(g))
    }

    /// Formal logarithm, `g' = f' / f`. Requires `f(0) = 1`.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::BadConstantTerm { op: "log", expected: "1" });
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n];
        for m in 1..n {
            let mut acc = &self.coeffs[m] * r(m);
            for k in 1..m {
                let f = &self.coeffs[m - k];
                if !f.is_zero() {
                    acc -= r(k) * &g[k] * f;
                }
            }
            g[m] = acc / r(m);
        }
        Ok(Self::new(g))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.series_mul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const N: usize = 10;

    fn s(c: &[Rational]) -> TruncatedSeries {
        TruncatedSeries::from_slice(N, c)
    }

    fn exp_t() -> TruncatedSeries {
        TruncatedSeries::exp_linear(N, &int(1))
    }

    /// log(1+t) written out coefficient by coefficient.
    fn log1p() -> TruncatedSeries {
        TruncatedSeries::from_fn(N, |n| match n {
            0 => int(0),
            _ => rat(if n % 2 == 1 { 1 } else { -1 }, n as i64),
        })
    }

    #[test]
    fn mul_examples() {
        let a = s(&[int(1), int(1)]);
        let b = s(&[int(1), int(-1)]);
        assert_eq!(&a * &b, s(&[int(1), int(0), int(-1)]));
        // t * sum t^n/(n+1)! = e^t - 1
        let e_minus_1_over_t = TruncatedSeries::from_fn(N, |n| {
            Rational::from_integer(1.into()) / Rational::from_integer(factorial(n + 1))
        });
        let lhs = &TruncatedSeries::t(N) * &e_minus_1_over_t;
        assert_eq!(lhs, &exp_t() - &TruncatedSeries::one(N));
        assert_eq!(&a * &TruncatedSeries::one(N), a);
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(8);
        assert_eq!((&a * &b).order(), 5);
        assert_eq!((&a + &b).order(), 5);
    }

    #[test]
    fn recip_examples() {
        let e1t = (&exp_t() - &TruncatedSeries::one(N)).div_t().unwrap();
        let bern = e1t.recip().unwrap();
        assert_eq!(bern.coeff(0), &int(1));
        assert_eq!(bern.coeff(1), &rat(-1, 2));
        assert_eq!(bern.egf_coeff(2), rat(1, 6));
        assert_eq!(TruncatedSeries::one(N).recip().unwrap(), TruncatedSeries::one(N));
        let geo = s(&[int(1), int(1)]).recip().unwrap();
        for n in 0..N {
            assert_eq!(geo.coeff(n), &int(if n % 2 == 0 { 1 } else { -1 }));
        }
        assert_eq!(
            TruncatedSeries::t(N).recip(),
            Err(AlgebraError::ZeroConstantTerm)
        );
    }

    #[test]
    fn compose_examples() {
        let f = exp_t();
        assert_eq!(f.compose(&TruncatedSeries::t(N)).unwrap(), f);
        assert_eq!(
            f.compose(&log1p()).unwrap(),
            s(&[int(1), int(1)])
        );
        assert_eq!(f.compose(&f), Err(AlgebraError::NonzeroInnerConstant));
        // (t/(e^t - 1))^k o log(1+t) = log(1+t)^k / t^k
        let c = (&exp_t() - &TruncatedSeries::one(N)).div_t().unwrap().recip().unwrap();
        for k in 1..4 {
            let lhs = c.pow(k).compose(&log1p().truncate(N - 1)).unwrap();
            let rhs = log1p().pow(k);
            // divide rhs by t^k
            let rhs = TruncatedSeries::new(rhs.coeffs()[k..].to_vec());
            assert_eq!(lhs.truncate(N - k), rhs);
        }
    }

    #[test]
    fn reversion_examples() {
        let em1 = &exp_t() - &TruncatedSeries::one(N);
        assert_eq!(em1.reversion().unwrap(), log1p());
        let t = TruncatedSeries::t(N);
        assert_eq!(t.reversion().unwrap(), t);
        let tt = s(&[int(0), int(1), int(1)]);
        let g = tt.reversion().unwrap();
        assert_eq!(&g.coeffs()[..4], &[int(0), int(1), int(-1), int(2)]);
        assert_eq!(tt.compose(&g).unwrap(), t);
        assert_eq!(g.compose(&tt).unwrap(), t);
        assert_eq!(exp_t().reversion(), Err(AlgebraError::NotReversible));
        assert_eq!(
            s(&[int(0), int(0), int(1)]).reversion(),
            Err(AlgebraError::NotReversible)
        );
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(TruncatedSeries::t(N).exp().unwrap(), exp_t());
        assert_eq!(s(&[int(1), int(1)]).log().unwrap(), log1p());
        let half_t2 = s(&[int(0), int(0), rat(1, 2)]);
        let g = half_t2.exp().unwrap();
        // exp(t^2/2): (2j)! [t^{2j}] = (2j-1)!!
        assert_eq!(g.egf_coeff(4), int(3));
        assert_eq!(g.egf_coeff(6), int(15));
        assert_eq!(g.egf_coeff(5), int(0));
        assert!(matches!(
            exp_t().exp(),
            Err(AlgebraError::BadConstantTerm { .. })
        ));
        assert!(TruncatedSeries::t(N).log().is_err());
    }

    #[test]
    fn rescale_and_shift_helpers() {
        let f = exp_t();
        assert_eq!(f.rescale_variable(&int(2)), TruncatedSeries::exp_linear(N, &int(2)));
        assert_eq!(f.mul_t_pow(2).coeff(2), &int(1));
        assert_eq!(f.derivative().truncate(N - 1), f.truncate(N - 1));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{binomial, parse_rational, Rational};
use super::AlgebraError;

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. Trailing zeros are never stored,
/// so the zero polynomial is the empty list and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, a: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * a + c)
    }

    pub fn derive(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// The antiderivative `q` with `q(x0) = 0`.
    pub fn integrate_from(&self, x0: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer(BigInt::from(k + 1)));
        }
        let q = Self::new(coeffs);
        let at = q.eval(x0);
        &q - &Self::constant(at)
    }

    /// `p(x + a)`, by binomial expansion.
    pub fn shift(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        let mut pw = Rational::one();
        for _ in 0..n {
            powers.push(pw.clone());
            pw *= a;
        }
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let b = Rational::from_integer(binomial(k, j));
                *slot += c * b * &powers[k - j];
            }
        }
        Self::new(out)
    }

    /// The homothecy `p(x / beta)`.
    pub fn dilate(&self, beta: &Rational) -> Result<Self, AlgebraError> {
        if beta.is_zero() {
            return Err(AlgebraError::ZeroDilation);
        }
        let inv = beta.recip();
        let mut scale = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &scale);
            scale *= &inv;
        }
        Ok(Self::new(out))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Comma-separated coefficients from degree 0; the zero polynomial is `0`.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_csv(text: &str) -> Result<Self, AlgebraError> {
        text.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(c: &[Rational]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let z = p(&[int(0), int(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.eval(&int(3)), int(0));
        assert_eq!(p(&[int(1), int(2), int(0)]).degree(), Some(1));
    }

    #[test]
    fn shift_examples() {
        let x2 = Polynomial::monomial(2);
        assert_eq!(x2.shift(&int(1)), p(&[int(1), int(2), int(1)]));
        assert_eq!(x2.shift(&int(0)), x2);
        assert_eq!(
            Polynomial::monomial(1).shift(&rat(1, 2)),
            p(&[rat(1, 2), int(1)])
        );
    }

    #[test]
    fn dilate_examples() {
        let x2 = Polynomial::monomial(2);
        assert_eq!(x2.dilate(&int(2)).unwrap(), p(&[int(0), int(0), rat(1, 4)]));
        assert_eq!(x2.dilate(&int(1)).unwrap(), x2);
        assert_eq!(
            Polynomial::monomial(3).dilate(&int(-1)).unwrap(),
            Polynomial::monomial(3).scale(&int(-1))
        );
        assert_eq!(x2.dilate(&int(0)), Err(AlgebraError::ZeroDilation));
    }

    #[test]
    fn calculus_examples() {
        let x2 = Polynomial::monomial(2);
        let cube_third = p(&[int(0), int(0), int(0), rat(1, 3)]);
        assert_eq!(x2.integrate_from(&int(0)), cube_third);
        assert_eq!(cube_third.derive(), x2);
        // B_2(x) = x^2 - x + 1/6
        let b2 = p(&[rat(1, 6), int(-1), int(1)]);
        assert_eq!(b2.eval(&int(0)), rat(1, 6));
        let q = b2.integrate_from(&rat(3, 7));
        assert_eq!(q.eval(&rat(3, 7)), int(0));
        assert_eq!(q.derive(), b2);
    }

    #[test]
    fn csv_and_display() {
        let b2 = p(&[rat(1, 6), int(-1), int(1)]);
        assert_eq!(b2.to_csv(), "1/6,-1,1");
        assert_eq!(Polynomial::from_csv("1/6,-1,1").unwrap(), b2);
        assert_eq!(Polynomial::zero().to_csv(), "0");
        assert_eq!(b2.to_string(), "x^2 - x + 1/6");
        assert_eq!(p(&[int(0), rat(-3, 2)]).to_string(), "-3/2*x");
    }

    #[test]
    fn ring_ops() {
        let a = p(&[int(1), int(1)]);
        let b = p(&[int(1), int(-1)]);
        assert_eq!(&a * &b, p(&[int(1), int(0), int(-1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(&a + &b, Polynomial::constant(int(2)));
        assert_eq!(-&a, p(&[int(-1), int(-1)]));
    }
}

//! Integral representations of the Bernoulli, Euler, Hermite and d-Hermite
//! transforms, evaluated by quadrature on exact polynomial input.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::accelerator::{AcceleratorKernel, AcceleratorParams};
use super::quadrature::{integrate_semiaxis, Decay, QuadratureResult};
use super::NumError;
use crate::algebra::{rat, rational_from_f64, to_f64, Polynomial, Rational};
use crate::families::{make_family, Family};
use crate::sheffer::{construct, Route};

fn exact_point(x: f64) -> Result<Rational, NumError> {
    rational_from_f64(x).ok_or(NumError::DomainError(x))
}

/// Taylor coefficients of `p` at `x` as floats.
fn taylor_at(p: &Polynomial, x: &Rational) -> Vec<f64> {
    p.shift(x).coeffs().iter().map(to_f64).collect()
}

/// `Σ_{k ≡ r mod 2} c_k (-1)^{(k-r)/2} u^{k-r}`: the real (`r = 0`) or
/// imaginary (`r = 1`, divided by `u`) part of `Σ c_k (iu)^k`.
fn parity_part(c: &[f64], r: usize, u: f64) -> f64 {
    let u2 = u * u;
    let mut acc = 0.0;
    let top = c.len().saturating_sub(1);
    let mut k = if top % 2 == r { top as isize } else { top as isize - 1 };
    while k >= r as isize {
        let sign = if ((k as usize - r) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc * u2 + sign * c[k as usize];
        k -= 2;
    }
    acc
}

fn with_offset(mut q: QuadratureResult, offset: f64) -> QuadratureResult {
    q.value += offset;
    q
}

/// Inverse Bernoulli transform via Abel–Plana:
/// `p(x) − p'(x)/2 + 2∫_0^∞ Im p'(x+is)/(e^{2πs} − 1) ds`.
pub fn bernoulli_abel_plana(p: &Polynomial, x: f64, tol: f64) -> Result<QuadratureResult, NumError> {
    let xr = exact_point(x)?;
    let dp = p.derive();
    let offset = to_f64(&(p.eval(&xr) - dp.eval(&xr) * rat(1, 2)));
    let c = taylor_at(&dp, &xr);
    let f = |s: f64| {
        // s/(e^{2πs}-1), continuous at 0
        let w = if s == 0.0 { 1.0 / (2.0 * PI) } else { s / (2.0 * PI * s).exp_m1() };
        2.0 * parity_part(&c, 1, s) * w
    };
    match integrate_semiaxis(&f, Decay::Exponential { rate: 2.0 * PI }, tol) {
        Ok(q) => Ok(with_offset(q, offset)),
        // report the partial result on the same scale as a success
        Err(NumError::NoConvergence { value, err, tol }) => {
            Err(NumError::NoConvergence { value: value + offset, err, tol })
        }
        Err(e) => Err(e),
    }
}

fn sech_half_pi(s: f64) -> f64 {
    let e = (-PI * s / 2.0).exp();
    2.0 * e / (1.0 + e * e)
}

/// Inverse Euler transform:
/// `∫_0^∞ [p(x−1/2+is/2) + p(x−1/2−is/2)] / (e^{πs/2} + e^{−πs/2}) ds`.
pub fn euler_integral_rep(p: &Polynomial, x: f64, tol: f64) -> Result<QuadratureResult, NumError> {
    let c = exact_point(x)? - rat(1, 2);
    let coeffs = taylor_at(p, &c);
    let f = |s: f64| parity_part(&coeffs, 0, s / 2.0) * sech_half_pi(s);
    integrate_semiaxis(&f, Decay::Exponential { rate: PI / 2.0 }, tol)
}

/// `2∫_0^∞ s^{2j}/(e^{πs/2} + e^{−πs/2}) ds`, which is `|E_{2j}|`.
pub fn euler_number_integral(j: usize, tol: f64) -> Result<QuadratureResult, NumError> {
    let f = |s: f64| s.powi(2 * j as i32) * sech_half_pi(s);
    integrate_semiaxis(&f, Decay::Exponential { rate: PI / 2.0 }, tol)
}

fn gauss_weight(s: f64) -> f64 {
    (-s * s / 2.0).exp() / (2.0 * PI).sqrt()
}

/// `(2/√(2π)) ∫_0^∞ Re p(x+is) e^{−s²/2} ds`; sends `xⁿ` to `He_n(x)`.
pub fn weierstrass_forward(p: &Polynomial, x: f64, tol: f64) -> Result<QuadratureResult, NumError> {
    let c = taylor_at(p, &exact_point(x)?);
    let f = |s: f64| 2.0 * parity_part(&c, 0, s) * gauss_weight(s);
    integrate_semiaxis(&f, Decay::Superexponential { beta: 2.0 }, tol)
}

/// `(1/√(2π)) ∫_0^∞ [p(x+s) + p(x−s)] e^{−s²/2} ds`; sends `He_n` to `xⁿ`.
pub fn weierstrass_inverse(p: &Polynomial, x: f64, tol: f64) -> Result<QuadratureResult, NumError> {
    let c = taylor_at(p, &exact_point(x)?);
    let even: Vec<f64> = c.iter().enumerate().map(|(k, v)| if k % 2 == 0 { *v } else { 0.0 }).collect();
    let f = |s: f64| {
        let mut acc = 0.0;
        for v in even.iter().rev() {
            acc = acc * s + v;
        }
        2.0 * acc * gauss_weight(s)
    };
    integrate_semiaxis(&f, Decay::Superexponential { beta: 2.0 }, tol)
}

/// Which side of the d-Hermite identity to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Σ_j H_n(x + ω^j s)` against `C_{d+1}`, expected `(d+1)xⁿ`
    Forward,
    /// `(1/(d+1)) Σ_j (x + e^{iπ(2j−1)/(d+1)} s)ⁿ` against `C_{d+1}`, expected `H_n(x)`
    Inverse,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Inverse => "inverse",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One memoised kernel per `α = d + 1`, shared by every check.
pub(crate) fn shared_kernel(d: usize) -> Result<Arc<AcceleratorKernel>, NumError> {
    static KERNELS: OnceLock<Mutex<HashMap<usize, Arc<AcceleratorKernel>>>> = OnceLock::new();
    let params = AcceleratorParams::new((d + 1) as f64)?;
    let mut map = KERNELS.get_or_init(Default::default).lock().expect("kernel registry poisoned");
    Ok(map.entry(d).or_insert_with(|| Arc::new(AcceleratorKernel::new(params))).clone())
}

fn check_d(d: usize) -> Result<(), NumError> {
    if d == 0 {
        return Err(NumError::InvalidParams("d must be at least 1".into()));
    }
    Ok(())
}

/// Exact `H_n^{(d)}` for `n ≤ nmax`.
pub(crate) fn d_hermite_exact(d: usize, nmax: usize) -> Result<Vec<Polynomial>, NumError> {
    check_d(d)?;
    let fs = make_family(Family::DHermite { d }).map_err(|e| NumError::InvalidParams(e.to_string()))?;
    construct(&fs.spec, Route::Egf, nmax).map_err(|e| NumError::InvalidParams(e.to_string()))
}

/// `∫_0^∞ f(s) C_{d+1}(s) ds`.
fn against_kernel(
    d: usize,
    f: &dyn Fn(f64) -> f64,
    tol: f64,
) -> Result<QuadratureResult, NumError> {
    let kernel = shared_kernel(d)?;
    let failure: Mutex<Option<NumError>> = Mutex::new(None);
    let g = |s: f64| match kernel.eval(s) {
        Ok(c) => f(s) * c,
        Err(e) => {
            failure.lock().expect("poisoned").get_or_insert(e);
            f64::NAN
        }
    };
    let beta = (d + 1) as f64 / d as f64;
    let r = integrate_semiaxis(&g, Decay::Superexponential { beta }, tol);
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    r
}

fn horner(c: &[f64], w: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * w + v)
}

/// Numeric side of the d-Hermite identities at `(n, x)`; see [`Direction`].
pub fn hermite_d_check(
    d: usize,
    n: usize,
    x: f64,
    direction: Direction,
    tol: f64,
) -> Result<QuadratureResult, NumError> {
    check_d(d)?;
    let xr = exact_point(x)?;
    let m = d + 1;
    let (coeffs, dirs, scale): (Vec<f64>, Vec<Complex64>, f64) = match direction {
        Direction::Forward => {
            let h = d_hermite_exact(d, n)?.pop().expect("n + 1 polynomials");
            let dirs = (0..m).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)).collect();
            (taylor_at(&h, &xr), dirs, 1.0)
        }
        Direction::Inverse => {
            let dirs = (0..m)
                .map(|j| Complex64::from_polar(1.0, PI * (2.0 * j as f64 - 1.0) / m as f64))
                .collect();
            (taylor_at(&Polynomial::monomial(n), &xr), dirs, 1.0 / m as f64)
        }
    };
    let f = |s: f64| scale * dirs.iter().map(|w| horner(&coeffs, w * s).re).sum::<f64>();
    against_kernel(d, &f, tol)
}

/// `∫_0^∞ sⁿ C_{d+1}(s) ds`, which should be `n!/Γ(1 + n/(d+1))`.
pub fn accelerator_moment(d: usize, n: usize, tol: f64) -> Result<QuadratureResult, NumError> {
    check_d(d)?;
    against_kernel(d, &|s: f64| s.powi(n as i32), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|v| int(*v)).collect())
    }

    #[test]
    fn abel_plana_low_degree() {
        let one = bernoulli_abel_plana(&Polynomial::one(), 0.7, 1e-12).unwrap();
        assert!((one.value - 1.0).abs() <= 1e-12);
        let x = bernoulli_abel_plana(&Polynomial::monomial(1), 0.0, 1e-12).unwrap();
        assert!((x.value + 0.5).abs() <= 1e-12);
        // B_2 = 1/6, B_3 = 0
        let b2 = bernoulli_abel_plana(&Polynomial::monomial(2), 0.0, 1e-12).unwrap();
        assert!((b2.value - 1.0 / 6.0).abs() <= 1e-12);
        let b3 = bernoulli_abel_plana(&Polynomial::monomial(3), 0.0, 1e-12).unwrap();
        assert!(b3.value.abs() <= 1e-12);
    }

    #[test]
    fn euler_low_degree() {
        let one = euler_integral_rep(&Polynomial::one(), 0.3, 1e-12).unwrap();
        assert!((one.value - 1.0).abs() <= 1e-12);
        let e2 = euler_integral_rep(&Polynomial::monomial(2), 0.5, 1e-12).unwrap();
        assert!((e2.value + 0.25).abs() <= 1e-12);
        for (j, e) in [1.0, 1.0, 5.0, 61.0, 1385.0].iter().enumerate() {
            let r = euler_number_integral(j, 1e-9).unwrap();
            assert!((r.value - e).abs() <= 1e-9, "j={j}: {}", r.value);
        }
    }

    #[test]
    fn weierstrass_pair() {
        // He_2 = x^2 - 1, He_3 = x^3 - 3x
        let he2 = weierstrass_forward(&Polynomial::monomial(2), 0.0, 1e-13).unwrap();
        assert!((he2.value + 1.0).abs() <= 1e-13);
        let he3 = poly(&[0, -3, 0, 1]);
        let back = weierstrass_inverse(&he3, 0.5, 1e-13).unwrap();
        assert!((back.value - 0.125).abs() <= 1e-13);
    }

    #[test]
    fn d_hermite_examples() {
        let r = hermite_d_check(2, 3, 1.0, Direction::Forward, 1e-8).unwrap();
        assert!((r.value - 3.0).abs() <= 1e-6, "{}", r.value);
        let m = accelerator_moment(2, 3, 1e-10).unwrap();
        assert!((m.value - 6.0).abs() <= 1e-8, "{}", m.value);
        // d = 1 against C_2 matches the Gaussian version: He_2-type value at 0
        let r = hermite_d_check(1, 2, 0.0, Direction::Inverse, 1e-10).unwrap();
        assert!((r.value + 2.0).abs() <= 1e-9, "{}", r.value);
        assert!(hermite_d_check(0, 1, 0.0, Direction::Forward, 1e-6).is_err());
    }
}

//! Accelerator functions `C_α`.
//!
//! `C_α(z) = (1/π) Σ sin((n+1)π/β) Γ((n+1)/α) zⁿ/n!` with `1/α + 1/β = 1`.
//! The series is entire but cancels badly for large real arguments, where
//! `C_α` is tiny; there we integrate `(α/π) Im ∫ exp(v^α − s v) dv` along a
//! steepest-descent-like contour through the saddle `v* = (s/α)^{1/(α−1)}`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::quadrature::{integrate_interval, integrate_semiaxis, Decay};
use super::NumError;

const MAX_TERMS: usize = 5000;
const REL_STOP: f64 = 1e-18;
/// Above this `Σ|term| / |sum|` the series is abandoned for the contour.
const MAX_CANCELLATION: f64 = 1e2;
const CONTOUR_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcceleratorParams {
    alpha: f64,
}

impl AcceleratorParams {
    pub fn new(alpha: f64) -> Result<Self, NumError> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(NumError::InvalidParams(format!("accelerator needs alpha > 1, got {alpha}")));
        }
        Ok(AcceleratorParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Conjugate exponent `α/(α−1)`.
    pub fn beta(&self) -> f64 {
        self.alpha / (self.alpha - 1.0)
    }

    /// `sin((n+1)π/β)`, exactly zero when the angle is a multiple of π.
    fn sin_factor(&self, n: usize) -> f64 {
        let r = ((n + 1) as f64 * (self.alpha - 1.0) / self.alpha).rem_euclid(2.0);
        if (r - r.round()).abs() < 1e-12 {
            0.0
        } else {
            (PI * r).sin()
        }
    }

    /// `ln(Γ((n+1)/α)/n!)`
    fn ln_weight(&self, n: usize) -> f64 {
        ln_gamma((n + 1) as f64 / self.alpha).expect("positive argument")
            - ln_gamma((n + 1) as f64).expect("positive argument")
    }

    /// `n`-th term and its bound `Γ((n+1)/α)|z|ⁿ/n!`.
    fn term(&self, n: usize, z: Complex64) -> (Complex64, f64) {
        let bound = if n == 0 {
            self.ln_weight(0).exp()
        } else if z == Complex64::new(0.0, 0.0) {
            0.0
        } else {
            (self.ln_weight(n) + n as f64 * z.norm().ln()).exp()
        };
        let t = Complex64::from_polar(bound * self.sin_factor(n), n as f64 * z.arg());
        (t / PI, bound / PI)
    }
}

struct Kahan {
    sum: Complex64,
    c: Complex64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: Complex64::new(0.0, 0.0), c: Complex64::new(0.0, 0.0) }
    }

    fn add(&mut self, x: Complex64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// The first `nterms` terms of the series, no stopping rule.
pub fn accelerator_series(params: AcceleratorParams, z: Complex64, nterms: usize) -> Complex64 {
    let mut acc = Kahan::new();
    for n in 0..nterms {
        acc.add(params.term(n, z).0);
    }
    acc.sum
}

/// Series with adaptive truncation; returns the sum and `Σ|term|`.
fn series_adaptive(params: AcceleratorParams, z: Complex64) -> Result<(Complex64, f64), NumError> {
    let mut acc = Kahan::new();
    let mut abs_sum = 0.0;
    let mut prev = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let (t, bound) = params.term(n, z);
        if !bound.is_finite() {
            return Err(NumError::NonFinite { at: z.norm() });
        }
        acc.add(t);
        abs_sum += t.norm();
        if bound < 1e-300 || (bound < REL_STOP * acc.sum.norm() && bound < prev) {
            return Ok((acc.sum, abs_sum));
        }
        prev = bound;
    }
    Err(NumError::TruncationFailure { terms: MAX_TERMS })
}

/// `C_α(z)` from the power series.
pub fn accelerator_eval(params: AcceleratorParams, z: Complex64) -> Result<Complex64, NumError> {
    series_adaptive(params, z).map(|(v, _)| v)
}

/// `C_α(s)` for real `s > 0` by contour integration.
pub fn accelerator_contour(params: AcceleratorParams, s: f64) -> Result<f64, NumError> {
    if !(s.is_finite() && s > 0.0) {
        return Err(NumError::DomainError(s));
    }
    let a = params.alpha;
    let vstar = (s / a).powf(1.0 / (a - 1.0));
    // ln|integrand| at the saddle; factored out so the legs are O(1)
    let ln_m = -s * vstar * (1.0 - 1.0 / a);
    let g = |v: Complex64| (v.powf(a) - s * v - ln_m).exp();

    let vertical = |y: f64| g(Complex64::new(vstar, y)).re;
    let scaled = if a <= 2.0 {
        integrate_semiaxis(&vertical, Decay::Superexponential { beta: a }, CONTOUR_TOL)?.value
    } else {
        let h = vstar * (PI / a).tan();
        let leg1 = integrate_interval(&vertical, 0.0, h, CONTOUR_TOL / 2.0)?.value;
        let d = Complex64::from_polar(1.0, PI / a);
        let top = Complex64::new(vstar, h);
        let ray = |r: f64| (g(top + d * r) * d).im;
        let leg2 = integrate_semiaxis(&ray, Decay::Superexponential { beta: a }, CONTOUR_TOL / 2.0)?.value;
        leg1 + leg2
    };
    Ok(a / PI * ln_m.exp() * scaled)
}

/// Real `C_α` on `[0, ∞)` with route selection and memoisation.
///
/// Shared across threads; quadrature of `∫ f(s) C_α(s) ds` hits the same
/// nodes for every polynomial `f`, so the cache pays off quickly.
pub struct AcceleratorKernel {
    params: AcceleratorParams,
    cache: Mutex<HashMap<u64, f64>>,
}

impl AcceleratorKernel {
    pub fn new(params: AcceleratorParams) -> Self {
        AcceleratorKernel { params, cache: Mutex::new(HashMap::new()) }
    }

    pub fn params(&self) -> AcceleratorParams {
        self.params
    }

    pub fn eval(&self, s: f64) -> Result<f64, NumError> {
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&s.to_bits()) {
            return Ok(*v);
        }
        let v = self.compute(s)?;
        self.cache.lock().expect("cache poisoned").insert(s.to_bits(), v);
        Ok(v)
    }

    fn compute(&self, s: f64) -> Result<f64, NumError> {
        if s < 0.0 || !s.is_finite() {
            return Err(NumError::DomainError(s));
        }
        if s < 8.0 {
            let (v, abs_sum) = series_adaptive(self.params, Complex64::new(s, 0.0))?;
            if abs_sum <= MAX_CANCELLATION * v.re.abs() || s == 0.0 {
                return Ok(v.re);
            }
        }
        accelerator_contour(self.params, s)
    }
}

use std::f64::consts::PI;

use super::NumError;

const G: f64 = 7.0;

// Lanczos coefficients for g = 7, n = 9.
const P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (original minus one)
    let mut t = P[0];
    for (i, p) in P.iter().enumerate().skip(1) {
        t += p / (x + i as f64);
    }
    t
}

/// Real Gamma function for `x > 0`.
pub fn gamma_eval(x: f64) -> Result<f64, NumError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumError::DomainError(x));
    }
    if x < 0.5 {
        return Ok(gamma_eval(x + 1.0)? / x);
    }
    let xm = x - 1.0;
    let w = xm + G + 0.5;
    // split the power so that w^{x-1/2} e^{-w} does not overflow early
    let half = w.powf((xm + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * half * (-w).exp() * half * lanczos_sum(xm))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, NumError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumError::DomainError(x));
    }
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let xm = x - 1.0;
    let w = xm + G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (xm + 0.5) * w.ln() - w + lanczos_sum(xm).ln())
}

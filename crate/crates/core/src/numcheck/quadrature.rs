//! Adaptive Gauss–Kronrod (7/15) quadrature on intervals and on `[0, ∞)`.

use super::NumError;

/// Value with an error estimate and the number of integrand calls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Declared tail behaviour of an integrand on `[0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// `|f(s)| ≲ poly(s) e^{-rate s}`
    Exponential { rate: f64 },
    /// `|f(s)| ≲ poly(s) e^{-c s^beta}` with `beta > 1`
    Superexponential { beta: f64 },
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Rule {
    value: f64,
    err: f64,
    /// Kronrod approximation of `∫|f|`
    abs: f64,
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn qk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<Rule, NumError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    if !resk.is_finite() || !resabs.is_finite() {
        return Err(NumError::NonFinite { at: c });
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let (resk, resabs, resasc) = (resk * h, resabs * h.abs(), resasc * h.abs());
    let mut err = (resk - resg * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if floor > err {
        err = floor;
    }
    Ok(Rule { value: resk, err, abs: resabs })
}

struct Acc {
    value: f64,
    err: f64,
    abs: f64,
    evals: usize,
}

fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    acc: &mut Acc,
) -> Result<(), NumError> {
    let r = qk15(f, a, b)?;
    acc.evals += 15;
    // the roundoff floor cannot be refined away
    if r.err <= tol || r.err <= 50.0 * f64::EPSILON * r.abs {
        acc.value += r.value;
        acc.err += r.err;
        acc.abs += r.abs;
        return Ok(());
    }
    if depth >= 40 {
        return Err(NumError::NoConvergence { value: acc.value + r.value, err: r.err, tol });
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, tol / 2.0, depth + 1, acc)?;
    adapt(f, m, b, tol / 2.0, depth + 1, acc)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate_interval(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult, NumError> {
    let mut acc = Acc { value: 0.0, err: 0.0, abs: 0.0, evals: 0 };
    adapt(f, a, b, tol, 0, &mut acc)?;
    Ok(QuadratureResult { value: acc.value, err_estimate: acc.err, evaluations: acc.evals })
}

const MAX_PANELS: usize = 4000;
const QUIET_PANELS: usize = 3;

/// `∫_0^∞ f` to absolute tolerance `tol`.
///
/// Marches over fixed-width panels sized from the declared decay, each
/// refined adaptively, and stops once a few consecutive panels (past a
/// minimal extent) contribute less than `tol/8` in absolute mass. The mass
/// of the last panel is added to the error as a tail proxy.
pub fn integrate_semiaxis(
    f: &dyn Fn(f64) -> f64,
    decay: Decay,
    tol: f64,
) -> Result<QuadratureResult, NumError> {
    let (width, min_extent) = match decay {
        Decay::Exponential { rate } => (2.0 / rate, 8.0 / rate),
        Decay::Superexponential { beta } => (1.0 / beta.max(1.0), 2.0),
    };
    let mut acc = Acc { value: 0.0, err: 0.0, abs: 0.0, evals: 0 };
    let panel_tol = tol / 16.0;
    let mut quiet = 0;
    // a quiet stretch only counts once the bulk has been seen, or far out
    let mut seen_mass = false;
    for k in 0..MAX_PANELS {
        let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
        let mut panel = Acc { value: 0.0, err: 0.0, abs: 0.0, evals: 0 };
        adapt(f, a, b, panel_tol, 0, &mut panel)?;
        acc.value += panel.value;
        acc.err += panel.err;
        acc.abs += panel.abs;
        acc.evals += panel.evals;
        let small = panel.abs < tol / 8.0;
        seen_mass |= !small;
        if small && b >= min_extent && (seen_mass || b >= 4.0 * min_extent) {
            quiet += 1;
            if quiet >= QUIET_PANELS {
                let err = acc.err + panel.abs;
                if err > tol {
                    return Err(NumError::NoConvergence { value: acc.value, err, tol });
                }
                return Ok(QuadratureResult { value: acc.value, err_estimate: err, evaluations: acc.evals });
            }
        } else {
            quiet = 0;
        }
    }
    Err(NumError::RayDivergence { at: MAX_PANELS as f64 * width })
}

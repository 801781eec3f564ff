//! Verification suites comparing quadrature against the exact core.

use std::fmt;

use rayon::prelude::*;

use super::gamma::gamma_eval;
use super::reps::{
    accelerator_moment, bernoulli_abel_plana, d_hermite_exact, euler_integral_rep,
    euler_number_integral, hermite_d_check, weierstrass_forward, weierstrass_inverse, Direction,
};
use super::{NumError, QuadratureResult};
use crate::algebra::{factorial, to_f64, Polynomial, Rational};
use crate::families::{euler_numbers_imaginary, make_family, Family};
use crate::sheffer::{construct, Route};

/// Named numeric suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyTarget {
    /// `B_n(x)`, `n ≤ 12`, `x ∈ {0, 1/2, 1, 2}`
    AbelPlana,
    /// `E_n(x)`, `n ≤ 10`, same grid, plus Euler numbers `E_{2j}`, `j ≤ 4`
    EulerRep,
    /// Gaussian pair, `n ≤ 10`, `x ∈ {0, 1/2, 1}`
    Weierstrass,
    /// Both d-Hermite identities, `n ≤ 6`, `x ∈ {0, 1/2, 1}`
    DHermite(usize),
    /// `∫ sⁿ C_{d+1}`, `n ≤ 8`
    AcceleratorMoments(usize),
}

impl VerifyTarget {
    /// Parse a target name; `d` is required for the accelerator targets.
    pub fn parse(name: &str, d: Option<usize>) -> Result<Self, NumError> {
        let need_d = || d.ok_or_else(|| NumError::InvalidParams(format!("target {name} needs --d")));
        let t = match name {
            "abel_plana" => VerifyTarget::AbelPlana,
            "euler_rep" => VerifyTarget::EulerRep,
            "weierstrass" => VerifyTarget::Weierstrass,
            "d_hermite" => VerifyTarget::DHermite(need_d()?),
            "accelerator_moments" => VerifyTarget::AcceleratorMoments(need_d()?),
            _ => return Err(NumError::InvalidParams(format!("unknown target {name:?}"))),
        };
        if let VerifyTarget::DHermite(0) | VerifyTarget::AcceleratorMoments(0) = t {
            return Err(NumError::InvalidParams("d must be at least 1".into()));
        }
        Ok(t)
    }

    pub fn name(&self) -> &'static str {
        match self {
            VerifyTarget::AbelPlana => "abel_plana",
            VerifyTarget::EulerRep => "euler_rep",
            VerifyTarget::Weierstrass => "weierstrass",
            VerifyTarget::DHermite(_) => "d_hermite",
            VerifyTarget::AcceleratorMoments(_) => "accelerator_moments",
        }
    }

    /// Tolerance used when none is given.
    pub fn default_tol(&self) -> f64 {
        match self {
            VerifyTarget::DHermite(d) | VerifyTarget::AcceleratorMoments(d) if *d >= 2 => 1e-6,
            _ => 1e-10,
        }
    }
}

impl fmt::Display for VerifyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyTarget::DHermite(d) | VerifyTarget::AcceleratorMoments(d) => {
                write!(f, "{}(d={d})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

/// One line of the verification table.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub check_id: String,
    pub params: String,
    pub exact: f64,
    /// `NaN` when the quadrature itself failed (see `error`)
    pub quadrature: f64,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub evaluations: usize,
    pub error: Option<String>,
}

const XS_BERNOULLI: [(f64, &str); 4] = [(0.0, "0"), (0.5, "1/2"), (1.0, "1"), (2.0, "2")];
const XS_HERMITE: [(f64, &str); 3] = [(0.0, "0"), (0.5, "1/2"), (1.0, "1")];

/// A pending case: id, params, exact value, quadrature thunk.
type Case = (String, String, f64, Box<dyn Fn(f64) -> Result<QuadratureResult, NumError> + Send + Sync>);

fn appell(family: Family, nmax: usize) -> Result<Vec<Polynomial>, NumError> {
    let fs = make_family(family).map_err(|e| NumError::InvalidParams(e.to_string()))?;
    construct(&fs.spec, Route::Egf, nmax).map_err(|e| NumError::InvalidParams(e.to_string()))
}

fn at(p: &Polynomial, x: f64) -> f64 {
    let xr = Rational::from_float(x).expect("grid points are finite");
    to_f64(&p.eval(&xr))
}

fn cases(target: VerifyTarget) -> Result<Vec<Case>, NumError> {
    let mut out: Vec<Case> = Vec::new();
    match target {
        VerifyTarget::AbelPlana => {
            let bern = appell(Family::Bernoulli, 12)?;
            for (n, b) in bern.iter().enumerate() {
                for (x, xs) in XS_BERNOULLI {
                    let p = Polynomial::monomial(n);
                    out.push((
                        "abel_plana".into(),
                        format!("n={n} x={xs}"),
                        at(b, x),
                        Box::new(move |tol| bernoulli_abel_plana(&p, x, tol)),
                    ));
                }
            }
        }
        VerifyTarget::EulerRep => {
            let euler = appell(Family::Euler, 10)?;
            for (n, e) in euler.iter().enumerate() {
                for (x, xs) in XS_BERNOULLI {
                    let p = Polynomial::monomial(n);
                    out.push((
                        "euler_rep".into(),
                        format!("n={n} x={xs}"),
                        at(e, x),
                        Box::new(move |tol| euler_integral_rep(&p, x, tol)),
                    ));
                }
            }
            for (j, e) in euler_numbers_imaginary(4).iter().enumerate() {
                out.push((
                    "euler_number".into(),
                    format!("j={j}"),
                    to_f64(e),
                    Box::new(move |tol| euler_number_integral(j, tol)),
                ));
            }
        }
        VerifyTarget::Weierstrass => {
            let he = appell(Family::Hermite, 10)?;
            for (n, h) in he.iter().enumerate() {
                for (x, xs) in XS_HERMITE {
                    let mono = Polynomial::monomial(n);
                    out.push((
                        "weierstrass_forward".into(),
                        format!("n={n} x={xs}"),
                        at(h, x),
                        Box::new(move |tol| weierstrass_forward(&mono, x, tol)),
                    ));
                    let h = h.clone();
                    out.push((
                        "weierstrass_inverse".into(),
                        format!("n={n} x={xs}"),
                        x.powi(n as i32),
                        Box::new(move |tol| weierstrass_inverse(&h, x, tol)),
                    ));
                }
            }
        }
        VerifyTarget::DHermite(d) => {
            let hs = d_hermite_exact(d, 6)?;
            for (n, h) in hs.iter().enumerate() {
                for (x, xs) in XS_HERMITE {
                    out.push((
                        "d_hermite_forward".into(),
                        format!("d={d} n={n} x={xs}"),
                        (d + 1) as f64 * x.powi(n as i32),
                        Box::new(move |tol| hermite_d_check(d, n, x, Direction::Forward, tol)),
                    ));
                    out.push((
                        "d_hermite_inverse".into(),
                        format!("d={d} n={n} x={xs}"),
                        at(h, x),
                        Box::new(move |tol| hermite_d_check(d, n, x, Direction::Inverse, tol)),
                    ));
                }
            }
        }
        VerifyTarget::AcceleratorMoments(d) => {
            for n in 0..=8usize {
                let exact = to_f64(&Rational::from_integer(factorial(n)))
                    / gamma_eval(1.0 + n as f64 / (d + 1) as f64)?;
                out.push((
                    "accelerator_moment".into(),
                    format!("d={d} n={n}"),
                    exact,
                    Box::new(move |tol| accelerator_moment(d, n, tol)),
                ));
            }
        }
    }
    Ok(out)
}

/// Run a suite in parallel; rows come back in a fixed order.
///
/// Quadrature is asked for a quarter of `tol` so that a passing row has
/// its integration error well inside the budget.
pub fn run_suite(target: VerifyTarget, tol: f64) -> Result<Vec<VerifyRow>, NumError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(NumError::InvalidParams(format!("tolerance must be positive, got {tol}")));
    }
    let cases = cases(target)?;
    Ok(cases
        .par_iter()
        .map(|(id, params, exact, run)| {
            let (quadrature, evaluations, error) = match run(tol / 4.0) {
                Ok(q) => (q.value, q.evaluations, None),
                Err(e) => (f64::NAN, 0, Some(e.to_string())),
            };
            let abs_err = (quadrature - exact).abs();
            VerifyRow {
                check_id: id.clone(),
                params: params.clone(),
                exact: *exact,
                quadrature,
                abs_err: if abs_err.is_nan() { f64::INFINITY } else { abs_err },
                tol,
                pass: abs_err <= tol,
                evaluations,
                error,
            }
        })
        .collect())
}

pub fn rows_to_tsv(rows: &[VerifyRow]) -> String {
    let mut s = String::from("check_id\tparams\texact\tquadrature\tabs_err\ttol\tpass\tevaluations\n");
    for r in rows {
        s.push_str(&format!(
            "{}\t{}\t{:.17e}\t{:.17e}\t{:.3e}\t{:.1e}\t{}\t{}\n",
            r.check_id, r.params, r.exact, r.quadrature, r.abs_err, r.tol, r.pass, r.evaluations
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_targets() {
        assert_eq!(VerifyTarget::parse("abel_plana", None).unwrap(), VerifyTarget::AbelPlana);
        assert_eq!(VerifyTarget::parse("d_hermite", Some(2)).unwrap(), VerifyTarget::DHermite(2));
        assert!(VerifyTarget::parse("d_hermite", None).is_err());
        assert!(VerifyTarget::parse("accelerator_moments", Some(0)).is_err());
        assert!(VerifyTarget::parse("nope", None).is_err());
        assert_eq!(VerifyTarget::DHermite(2).default_tol(), 1e-6);
        assert_eq!(VerifyTarget::AbelPlana.default_tol(), 1e-10);
    }

    #[test]
    fn weierstrass_suite_passes() {
        let rows = run_suite(VerifyTarget::Weierstrass, 1e-10).unwrap();
        assert_eq!(rows.len(), 11 * 3 * 2);
        let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
        let tsv = rows_to_tsv(&rows);
        assert_eq!(tsv.lines().count(), rows.len() + 1);
        assert!(tsv.lines().nth(1).unwrap().starts_with("weierstrass_forward\tn=0 x=0\t"));
    }
}

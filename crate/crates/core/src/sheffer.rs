//! Sheffer and Appell sequences.
//!
//! A [`ShefferSpec`] pairs a delta operator `𝔔` with a functional `S` of
//! nonzero mass. The sequence it determines can be built three ways:
//!
//! * [`sheffer_egf`]: `s_n = n! [t^n] exp(x B(t)) / A(t)` with `A(t) = S(exp(x B(t)))`;
//! * [`sheffer_recurrence`]: `s_n = n 𝔔⁻¹(s_{n-1}) - n s_0 S(𝔔⁻¹(s_{n-1}))`;
//! * [`appell_delta_expansion`] (Appell case): `p_n = sum α_k/k! 𝔔^k(x^n)` for any
//!   auxiliary delta operator `𝔔`.
//!
//! All three are exact, so agreement is checked with `==`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{binomial, factorial, AlgebraError, Polynomial, Rational, TruncatedSeries};
use crate::functionals::{FunctionalError, MomentFunctional};
use crate::operators::{functional_to_op, DeltaKind, DeltaOperator, OperatorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShefferError {
    #[error("functional has zero mass L(1) = 0, so it is not invertible")]
    NotInvertible,
    #[error("series are not compositional inverses of each other")]
    NotInversePair,
    #[error("route needs an Appell spec (delta = derivative)")]
    NotAppell,
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn ri(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Extra series order kept beyond the highest requested index.
pub const ORDER_SLACK: usize = 4;

/// The `(𝔔, 𝔖, S)` triple, with `𝔖 = j(S)`.
#[derive(Clone, Debug)]
pub struct ShefferSpec {
    delta: DeltaOperator,
    functional: MomentFunctional,
}

impl ShefferSpec {
    pub fn new(delta: DeltaOperator, functional: MomentFunctional) -> Result<Self, ShefferError> {
        if functional.moment(0)?.is_zero() {
            return Err(ShefferError::NotInvertible);
        }
        Ok(ShefferSpec { delta, functional })
    }

    /// Appell spec `(∂, L)`.
    pub fn appell(functional: MomentFunctional) -> Result<Self, ShefferError> {
        Self::new(DeltaOperator::derivative(2), functional)
    }

    pub fn delta(&self) -> &DeltaOperator {
        &self.delta
    }

    pub fn functional(&self) -> &MomentFunctional {
        &self.functional
    }

    pub fn is_appell(&self) -> bool {
        matches!(self.delta.kind(), DeltaKind::Derivative) || self.delta.is_derivative()
    }

    /// The delta operator at order `nmax + ORDER_SLACK` (or as high as a raw
    /// symbol allows, provided it still covers `nmax`).
    pub fn working_delta(&self, nmax: usize) -> Result<DeltaOperator, ShefferError> {
        let target = nmax + ORDER_SLACK;
        match self.delta.at_order(target) {
            Ok(d) => Ok(d),
            Err(_) if self.delta.order() >= nmax + 2 => Ok(self.delta.clone()),
            Err(e) => Err(e.into()),
        }
    }
}

/// Which construction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Egf,
    Recurrence,
    DeltaExpansion,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Egf, Route::Recurrence, Route::DeltaExpansion];

    pub fn name(self) -> &'static str {
        match self {
            Route::Egf => "egf",
            Route::Recurrence => "recurrence",
            Route::DeltaExpansion => "delta_expansion",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds `s_0..=s_nmax` by the given route. The recurrence uses `x0 = 0`;
/// the delta expansion uses the forward difference `Δ` as auxiliary operator.
pub fn construct(spec: &ShefferSpec, route: Route, nmax: usize) -> Result<Vec<Polynomial>, ShefferError> {
    match route {
        Route::Egf => sheffer_egf(spec, nmax),
        Route::Recurrence => sheffer_recurrence(spec, nmax, &Rational::zero()),
        Route::DeltaExpansion => {
            if !spec.is_appell() {
                return Err(ShefferError::NotAppell);
            }
            let q = DeltaOperator::difference(Rational::one(), nmax + ORDER_SLACK)?;
            Ok(appell_delta_expansion(spec.functional(), &q, nmax)?.1)
        }
    }
}

/// `A(t) = sum S(q_n) t^n/n!` for `n <= nmax`.
pub fn sheffer_a_series(spec: &ShefferSpec, nmax: usize) -> Result<TruncatedSeries, ShefferError> {
    let q = spec.working_delta(nmax)?;
    let basic = q.basic_sequence(nmax)?;
    let a: Vec<Rational> = basic
        .iter()
        .map(|qn| spec.functional.apply(qn))
        .collect::<Result<_, _>>()?;
    Ok(TruncatedSeries::from_egf(nmax + 1, |n| a[n].clone()))
}

/// `s_n = n! [t^n] exp(x B(t)) / A(t)`.
pub fn sheffer_egf(spec: &ShefferSpec, nmax: usize) -> Result<Vec<Polynomial>, ShefferError> {
    let q = spec.working_delta(nmax)?;
    let basic = q.basic_sequence(nmax)?;
    let a = sheffer_a_series(spec, nmax)?;
    let inv = a.recip().map_err(|_| ShefferError::NotInvertible)?;
    // exp(xB)·(1/A): s_n = sum_k C(n,k) (k![t^k] 1/A) q_{n-k}
    let c: Vec<Rational> = (0..=nmax).map(|k| inv.egf_coeff(k)).collect();
    Ok((0..=nmax)
        .map(|n| {
            (0..=n).fold(Polynomial::zero(), |acc, k| {
                &acc + &basic[n - k].scale(&(binom(n, k) * &c[k]))
            })
        })
        .collect())
}

/// `s_0 = 1/S(1)`, `s_n = n (P - s_0 S(P))` with `P = 𝔔⁻¹_{x0}(s_{n-1})`.
pub fn sheffer_recurrence(
    spec: &ShefferSpec,
    nmax: usize,
    x0: &Rational,
) -> Result<Vec<Polynomial>, ShefferError> {
    let q = spec.working_delta(nmax)?;
    let l0 = spec.functional.moment(0)?;
    if l0.is_zero() {
        return Err(ShefferError::NotInvertible);
    }
    let s0 = l0.recip();
    let mut out = vec![Polynomial::constant(s0.clone())];
    for n in 1..=nmax {
        let p = q.left_inverse(x0, &out[n - 1])?;
        let corr = &s0 * spec.functional.apply(&p)?;
        let sn = (&p - &Polynomial::constant(corr)).scale(&ri(n));
        out.push(sn);
    }
    Ok(out)
}

/// Appell sequence of `L` expanded in powers of an auxiliary delta operator:
/// with `C = 1/indicator(L)` and `(C∘B)(t) = sum α_k t^k/k!`,
/// `p_n = sum_k α_k/k! 𝔔^k(x^n)`.
pub fn appell_delta_expansion(
    l: &MomentFunctional,
    q: &DeltaOperator,
    nmax: usize,
) -> Result<(Vec<Rational>, Vec<Polynomial>), ShefferError> {
    let order = nmax + 1;
    if q.order() < order {
        return Err(OperatorError::OrderTooLow { degree: nmax, order: q.order() }.into());
    }
    let ind = l.indicator_series(order)?;
    let c = ind.recip().map_err(|_| ShefferError::NotInvertible)?;
    let cb = c.compose(&q.b().truncate(order))?;
    let alphas: Vec<Rational> = (0..=nmax).map(|k| cb.egf_coeff(k)).collect();
    let mut polys = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut acc = Polynomial::zero();
        let mut qk = Polynomial::monomial(n);
        for (k, alpha) in alphas.iter().enumerate().take(n + 1) {
            if !alpha.is_zero() {
                acc = &acc + &qk.scale(&(alpha / fact(k)));
            }
            qk = q.apply(&qk)?;
        }
        polys.push(acc);
    }
    Ok((alphas, polys))
}

/// The sequence of the `k`-fold power `S^k` for a fixed delta operator;
/// `k = 0` gives the basic sequence.
pub fn kfold_sequence(
    delta: &DeltaOperator,
    l: &MomentFunctional,
    k: usize,
    nmax: usize,
) -> Result<Vec<Polynomial>, ShefferError> {
    if k == 0 {
        let spec = ShefferSpec::new(delta.clone(), MomentFunctional::eval(Rational::zero()))?;
        return Ok(spec.working_delta(nmax)?.basic_sequence(nmax)?);
    }
    sheffer_egf(&ShefferSpec::new(delta.clone(), l.power(k)?)?, nmax)
}

/// Connection coefficients between `x^n` and a basic sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    /// `s_B(n,k) = n! [t^n] B^k/k!`
    pub s: Vec<Vec<Rational>>,
    /// `S_B(n,k) = n! [t^n] B̄^k/k!`
    pub big_s: Vec<Vec<Rational>>,
    pub nmax: usize,
}

impl StirlingTable {
    pub fn s(&self, n: usize, k: usize) -> Rational {
        self.s[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn big_s(&self, n: usize, k: usize) -> Rational {
        self.big_s[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `sum_k s(n,k) S(k,m) = δ_{n,m}` for all `n, m <= nmax`.
    pub fn is_mutually_inverse(&self) -> bool {
        (0..=self.nmax).all(|n| {
            (0..=self.nmax).all(|m| {
                let sum = (0..=self.nmax).fold(Rational::zero(), |acc, k| {
                    acc + self.s(n, k) * self.big_s(k, m)
                });
                sum == if n == m { Rational::one() } else { Rational::zero() }
            })
        })
    }
}

fn triangle(f: &TruncatedSeries, nmax: usize) -> Vec<Vec<Rational>> {
    let f = f.truncate(nmax + 1);
    let mut rows = vec![Vec::new(); nmax + 1];
    let mut pw = TruncatedSeries::one(nmax + 1);
    for k in 0..=nmax {
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row.push(pw.coeff(n) * fact(n) / fact(k));
        }
        pw = pw.series_mul(&f);
    }
    // rows[n] now has entries for k = 0..=n
    rows
}

pub fn generalized_stirling(
    b: &TruncatedSeries,
    bbar: &TruncatedSeries,
    nmax: usize,
) -> Result<StirlingTable, ShefferError> {
    let order = nmax + 1;
    if b.order() < order || bbar.order() < order {
        return Err(OperatorError::OrderTooLow { degree: nmax, order: b.order().min(bbar.order()) }.into());
    }
    let (b, bbar) = (b.truncate(order), bbar.truncate(order));
    let t = TruncatedSeries::t(order);
    let inverse = |f: &TruncatedSeries, g: &TruncatedSeries| f.compose(g).map(|h| h == t).unwrap_or(false);
    if !inverse(&b, &bbar) || !inverse(&bbar, &b) {
        return Err(ShefferError::NotInversePair);
    }
    Ok(StirlingTable { s: triangle(&b, nmax), big_s: triangle(&bbar, nmax), nmax })
}

/// One line of a characterization report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub id: &'static str,
    pub n: usize,
    pub pass: bool,
    /// First differing coefficient, or `-`.
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub entries: Vec<ReportEntry>,
}

impl CharacterizationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// `id \t n \t pass|fail \t witness`, one line per entry.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "fail" };
            s.push_str(&format!("{}\t{}\t{}\t{}\n", e.id, e.n, status, e.witness));
        }
        s
    }

    fn push(&mut self, id: &'static str, n: usize, witness: Option<String>) {
        self.entries.push(ReportEntry {
            id,
            n,
            pass: witness.is_none(),
            witness: witness.unwrap_or_else(|| "-".to_string()),
        });
    }
}

/// `None` when equal, else the first differing coefficient.
fn poly_diff(got: &Polynomial, want: &Polynomial) -> Option<String> {
    let len = got.coeffs().len().max(want.coeffs().len());
    (0..len)
        .find(|&k| got.coeff(k) != want.coeff(k))
        .map(|k| format!("x^{k}: got {} want {}", got.coeff(k), want.coeff(k)))
}

fn bivariate_diff(got: &[Polynomial], want: &[Polynomial]) -> Option<String> {
    let len = got.len().max(want.len());
    let zero = Polynomial::zero();
    (0..len).find_map(|i| {
        let g = got.get(i).unwrap_or(&zero);
        let w = want.get(i).unwrap_or(&zero);
        poly_diff(g, w).map(|d| format!("x0^{i} {d}"))
    })
}

fn scalar_diff(got: &Rational, want: &Rational) -> Option<String> {
    (got != want).then(|| format!("got {got} want {want}"))
}

/// `p(x + x0)` as a list of polynomials in `x`, indexed by the power of `x0`
/// (Taylor expansion `p^{(i)}(x)/i!`).
fn shifted_bivariate(p: &Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut d = p.clone();
    let mut i = 0;
    while !d.is_zero() {
        out.push(d.scale(&fact(i).recip()));
        d = d.derive();
        i += 1;
    }
    out
}

/// Checks every characterization of a Sheffer sequence, exactly.
///
/// Identity ids:
/// `lowering` 𝔔(s_n) = n s_{n-1};
/// `operator` j(S)(s_n) = q_n;
/// `binomial_shift` s_n(x+x0) = sum C(n,k) s_k(x) q_{n-k}(x0);
/// `binomial_zero` s_n(x) = sum C(n,k) s_k(0) q_{n-k}(x);
/// `biorthogonality` S(𝔔^m s_n) = n! δ_{n,m};
/// `annihilation` S(s_n) = δ_{n,0};
/// `mean_value` S(T_{x0} s_n) = q_n(x0) as polynomials in x0.
pub fn verify_characterizations(
    spec: &ShefferSpec,
    polys: &[Polynomial],
) -> Result<CharacterizationReport, ShefferError> {
    let mut report = CharacterizationReport::default();
    if polys.is_empty() {
        return Ok(report);
    }
    let nmax = polys.len() - 1;
    let q = spec.working_delta(nmax)?;
    let basic = q.basic_sequence(nmax)?;
    let l = &spec.functional;
    let frak_s = functional_to_op(l, nmax + ORDER_SLACK)?;

    let s0_ok = polys[0].degree() == Some(0);
    report.push("lowering", 0, (!s0_ok).then(|| "s_0 is not a nonzero constant".to_string()));
    for n in 1..=nmax {
        let got = q.apply(&polys[n])?;
        let want = polys[n - 1].scale(&ri(n));
        report.push("lowering", n, poly_diff(&got, &want));
    }

    for (n, sn) in polys.iter().enumerate() {
        report.push("operator", n, poly_diff(&frak_s.apply(sn)?, &basic[n]));
    }

    for n in 0..=nmax {
        // coefficient of x0^i: sum_k C(n,k) [x0^i] q_{n-k} · s_k(x)
        let want: Vec<Polynomial> = (0..=n)
            .map(|i| {
                (0..=n).fold(Polynomial::zero(), |acc, k| {
                    let c = binom(n, k) * basic[n - k].coeff(i);
                    &acc + &polys[k].scale(&c)
                })
            })
            .collect();
        report.push("binomial_shift", n, bivariate_diff(&shifted_bivariate(&polys[n]), &want));

        let zero = Rational::zero();
        let want = (0..=n).fold(Polynomial::zero(), |acc, k| {
            &acc + &basic[n - k].scale(&(binom(n, k) * polys[k].eval(&zero)))
        });
        report.push("binomial_zero", n, poly_diff(&polys[n], &want));
    }

    for (n, sn) in polys.iter().enumerate() {
        let mut witness = None;
        let mut qm = sn.clone();
        for m in 0..=nmax {
            let got = l.apply(&qm)?;
            let want = if m == n { fact(n) } else { Rational::zero() };
            if got != want {
                witness = Some(format!("m={m}: got {got} want {want}"));
                break;
            }
            qm = q.apply(&qm)?;
        }
        report.push("biorthogonality", n, witness);
    }

    for (n, sn) in polys.iter().enumerate() {
        let want = if n == 0 { Rational::one() } else { Rational::zero() };
        report.push("annihilation", n, scalar_diff(&l.apply(sn)?, &want));
    }

    for (n, sn) in polys.iter().enumerate() {
        // S(s_n(· + x0)) = sum_i x0^i S(s_n^{(i)}/i!)
        let taylor = shifted_bivariate(sn);
        let coeffs: Vec<Rational> = taylor.iter().map(|p| l.apply(p)).collect::<Result<_, _>>()?;
        report.push("mean_value", n, poly_diff(&Polynomial::new(coeffs), &basic[n]));
    }
    Ok(report)
}

//! Catalog of classical Appell families, each given by the functional that
//! induces it, together with its indicator series computed independently
//! from the closed form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{
    binomial, factorial, parse_rational, Polynomial, Rational, TruncatedSeries,
};
use crate::functionals::{FunctionalError, MomentFunctional};
use crate::sheffer::{ShefferError, ShefferSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("no closed-form expansion for {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Sheffer(#[from] ShefferError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParams(msg.into())
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn binom(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rpow(a: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * a)
}

/// `a (a+1) ⋯ (a+n-1)`
fn rising(a: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (a + ri(i as i64)))
}

/// The families of the catalog with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(x - a)^n`
    Monomial { a: Rational },
    Bernoulli,
    BernoulliK { k: usize },
    NorlundBernoulli { omega: Vec<Rational> },
    ApostolEuler { beta: Rational },
    Euler,
    ApostolEulerK { beta: Rational, k: usize },
    NorlundEuler { omega: Vec<Rational> },
    Strodt { w: Vec<Rational>, x: Vec<Rational> },
    /// Weights `a_l, …, a_m` on `∫_0^j`.
    BernoulliType { l: i64, m: i64, a: Vec<Rational> },
    Hermite,
    /// Exponential generating series `exp(xt - t^{d+1})`.
    DHermite { d: usize },
    /// `λ_d^{-n} H_n^{(d)}(λ_d x)` with `λ_d^{d+1} = d!(d+1)^2`.
    DHermiteOrth { d: usize },
    Laguerre { alpha: Rational },
    BernoulliHyp { n: usize },
    Kummer { a: Rational, b: Rational },
    Touchard { lambda: Rational },
}

/// A parameter value: single rational or list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Scalar(Rational),
    List(Vec<Rational>),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Scalar(r) => write!(f, "{r}"),
            Param::List(v) => {
                let items: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", items.join(", "))
            }
        }
    }
}

impl Param {
    /// Comma-separated rationals; a single item is a scalar.
    pub fn parse(text: &str) -> Result<Param, FamilyError> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let items = t
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(if items.len() == 1 {
            Param::Scalar(items.into_iter().next().unwrap())
        } else {
            Param::List(items)
        })
    }

    fn list(&self) -> Vec<Rational> {
        match self {
            Param::Scalar(r) => vec![r.clone()],
            Param::List(v) => v.clone(),
        }
    }
}

pub const FAMILY_IDS: [&str; 17] = [
    "monomial",
    "bernoulli",
    "bernoulli_k",
    "norlund_bernoulli",
    "apostol_euler",
    "euler",
    "apostol_euler_k",
    "norlund_euler",
    "strodt",
    "bernoulli_type",
    "hermite",
    "d_hermite",
    "d_hermite_orth",
    "laguerre",
    "bernoulli_hyp",
    "kummer",
    "touchard",
];

/// Parameter names accepted by each family id, in canonical order.
pub fn param_names(id: &str) -> Option<&'static [&'static str]> {
    Some(match id {
        "monomial" => &["a"],
        "bernoulli" | "euler" | "hermite" => &[],
        "bernoulli_k" => &["k"],
        "norlund_bernoulli" | "norlund_euler" => &["omega"],
        "apostol_euler" => &["beta"],
        "apostol_euler_k" => &["beta", "k"],
        "strodt" => &["w", "x"],
        "bernoulli_type" => &["l", "m", "a"],
        "d_hermite" | "d_hermite_orth" => &["d"],
        "laguerre" => &["alpha"],
        "bernoulli_hyp" => &["n"],
        "kummer" => &["a", "b"],
        "touchard" => &["lambda"],
        _ => return None,
    })
}

fn as_int(name: &str, r: &Rational) -> Result<i64, FamilyError> {
    if !r.is_integer() {
        return Err(bad(format!("{name} must be an integer, got {r}")));
    }
    r.to_integer().to_i64().ok_or_else(|| bad(format!("{name} is out of range")))
}

fn as_count(name: &str, r: &Rational, min: i64) -> Result<usize, FamilyError> {
    let v = as_int(name, r)?;
    if v < min {
        return Err(bad(format!("{name} must be at least {min}, got {v}")));
    }
    Ok(v as usize)
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Monomial { .. } => "monomial",
            Family::Bernoulli => "bernoulli",
            Family::BernoulliK { .. } => "bernoulli_k",
            Family::NorlundBernoulli { .. } => "norlund_bernoulli",
            Family::ApostolEuler { .. } => "apostol_euler",
            Family::Euler => "euler",
            Family::ApostolEulerK { .. } => "apostol_euler_k",
            Family::NorlundEuler { .. } => "norlund_euler",
            Family::Strodt { .. } => "strodt",
            Family::BernoulliType { .. } => "bernoulli_type",
            Family::Hermite => "hermite",
            Family::DHermite { .. } => "d_hermite",
            Family::DHermiteOrth { .. } => "d_hermite_orth",
            Family::Laguerre { .. } => "laguerre",
            Family::BernoulliHyp { .. } => "bernoulli_hyp",
            Family::Kummer { .. } => "kummer",
            Family::Touchard { .. } => "touchard",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, Param)> {
        use Param::{List, Scalar};
        let int = |v: usize| Scalar(ri(v as i64));
        match self {
            Family::Monomial { a } => vec![("a", Scalar(a.clone()))],
            Family::Bernoulli | Family::Euler | Family::Hermite => vec![],
            Family::BernoulliK { k } => vec![("k", int(*k))],
            Family::NorlundBernoulli { omega } | Family::NorlundEuler { omega } => {
                vec![("omega", List(omega.clone()))]
            }
            Family::ApostolEuler { beta } => vec![("beta", Scalar(beta.clone()))],
            Family::ApostolEulerK { beta, k } => vec![("beta", Scalar(beta.clone())), ("k", int(*k))],
            Family::Strodt { w, x } => vec![("w", List(w.clone())), ("x", List(x.clone()))],
            Family::BernoulliType { l, m, a } => {
                vec![("l", Scalar(ri(*l))), ("m", Scalar(ri(*m))), ("a", List(a.clone()))]
            }
            Family::DHermite { d } | Family::DHermiteOrth { d } => vec![("d", int(*d))],
            Family::Laguerre { alpha } => vec![("alpha", Scalar(alpha.clone()))],
            Family::BernoulliHyp { n } => vec![("n", int(*n))],
            Family::Kummer { a, b } => vec![("a", Scalar(a.clone())), ("b", Scalar(b.clone()))],
            Family::Touchard { lambda } => vec![("lambda", Scalar(lambda.clone()))],
        }
    }

    /// Builds a family from an id and named parameters; unknown or missing
    /// names are rejected. Constraints are checked in [`make_family`].
    pub fn from_params(id: &str, params: &BTreeMap<String, Param>) -> Result<Family, FamilyError> {
        let names = param_names(id).ok_or_else(|| FamilyError::UnknownFamily(id.to_string()))?;
        if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(bad(format!("{id} takes no parameter {extra:?}")));
        }
        let get = |name: &str| -> Result<&Param, FamilyError> {
            params.get(name).ok_or_else(|| bad(format!("{id} needs parameter {name}")))
        };
        let scalar = |name: &str| -> Result<Rational, FamilyError> {
            match get(name)? {
                Param::Scalar(r) => Ok(r.clone()),
                Param::List(_) => Err(bad(format!("{name} must be a single rational"))),
            }
        };
        let list = |name: &str| get(name).map(Param::list);
        Ok(match id {
            "monomial" => Family::Monomial { a: scalar("a")? },
            "bernoulli" => Family::Bernoulli,
            "euler" => Family::Euler,
            "hermite" => Family::Hermite,
            "bernoulli_k" => Family::BernoulliK { k: as_count("k", &scalar("k")?, 0)? },
            "norlund_bernoulli" => Family::NorlundBernoulli { omega: list("omega")? },
            "norlund_euler" => Family::NorlundEuler { omega: list("omega")? },
            "apostol_euler" => Family::ApostolEuler { beta: scalar("beta")? },
            "apostol_euler_k" => Family::ApostolEulerK {
                beta: scalar("beta")?,
                k: as_count("k", &scalar("k")?, 0)?,
            },
            "strodt" => Family::Strodt { w: list("w")?, x: list("x")? },
            "bernoulli_type" => Family::BernoulliType {
                l: as_int("l", &scalar("l")?)?,
                m: as_int("m", &scalar("m")?)?,
                a: list("a")?,
            },
            "d_hermite" => Family::DHermite { d: as_count("d", &scalar("d")?, 0)? },
            "d_hermite_orth" => Family::DHermiteOrth { d: as_count("d", &scalar("d")?, 0)? },
            "laguerre" => Family::Laguerre { alpha: scalar("alpha")? },
            "bernoulli_hyp" => Family::BernoulliHyp { n: as_count("n", &scalar("n")?, 0)? },
            "kummer" => Family::Kummer { a: scalar("a")?, b: scalar("b")? },
            "touchard" => Family::Touchard { lambda: scalar("lambda")? },
            _ => unreachable!(),
        })
    }

    /// Validates the parameter constraints of each row.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let zero = Rational::zero();
        match self {
            Family::BernoulliK { k } | Family::ApostolEulerK { k, .. } if *k < 1 => {
                Err(bad("k must be at least 1"))
            }
            Family::NorlundBernoulli { omega } | Family::NorlundEuler { omega } => {
                if omega.is_empty() {
                    Err(bad("omega must be nonempty"))
                } else if omega.iter().any(Zero::is_zero) {
                    Err(bad("omega_j must be nonzero"))
                } else {
                    Ok(())
                }
            }
            Family::ApostolEuler { beta } | Family::ApostolEulerK { beta, .. } if beta.is_zero() => {
                Err(bad("beta must be nonzero"))
            }
            Family::Strodt { w, x } => {
                if w.is_empty() || w.len() != x.len() {
                    Err(bad("w and x must be nonempty and of equal length"))
                } else if w.iter().any(|wj| *wj <= zero || *wj >= Rational::one()) {
                    Err(bad("0 < w_j < 1 is required"))
                } else if w.iter().sum::<Rational>() != Rational::one() {
                    Err(bad("sum of w_j must be 1"))
                } else {
                    Ok(())
                }
            }
            Family::BernoulliType { l, m, a } => {
                if l > m || a.len() as i64 != m - l + 1 {
                    Err(bad("a must list a_l, ..., a_m"))
                } else if a.iter().sum::<Rational>() != zero {
                    Err(bad("sum of a_j must be 0"))
                } else if (*l..=*m).zip(a).map(|(j, aj)| ri(j) * aj).sum::<Rational>() != Rational::one() {
                    Err(bad("sum of j*a_j must be 1"))
                } else {
                    Ok(())
                }
            }
            Family::DHermite { d } | Family::DHermiteOrth { d } if *d < 1 => {
                Err(bad("d must be an integer >= 1"))
            }
            Family::Laguerre { alpha } if *alpha <= ri(-1) => Err(bad("alpha > -1 is required")),
            Family::BernoulliHyp { n } if *n < 1 => Err(bad("N must be at least 1")),
            Family::Kummer { a, b } if *a <= zero || *b <= zero => Err(bad("a > 0 and b > 0 are required")),
            _ => Ok(()),
        }
    }

    /// The inducing functional, built from combinators and moment rules.
    pub fn functional(&self) -> Result<MomentFunctional, FamilyError> {
        self.validate()?;
        let eval = |a: Rational| MomentFunctional::eval(a);
        let inner = match self {
            Family::Monomial { a } => eval(a.clone()),
            Family::Bernoulli => MomentFunctional::uniform01(),
            Family::BernoulliK { k } => MomentFunctional::uniform01().power(*k)?,
            Family::NorlundBernoulli { omega } => MomentFunctional::convolve(
                omega
                    .iter()
                    .map(|w| MomentFunctional::uniform01().dilate(w.recip()))
                    .collect::<Result<_, _>>()?,
            )?,
            Family::ApostolEuler { beta } => MomentFunctional::mix(vec![
                (Rational::one() - beta, eval(Rational::zero())),
                (beta.clone(), eval(Rational::one())),
            ])?,
            Family::Euler => MomentFunctional::mix(vec![
                (Rational::new(1.into(), 2.into()), eval(Rational::zero())),
                (Rational::new(1.into(), 2.into()), eval(Rational::one())),
            ])?,
            Family::ApostolEulerK { beta, k } => MomentFunctional::mix(
                (0..=*k)
                    .map(|j| {
                        let w = binom(*k, j) * rpow(beta, j) * rpow(&(Rational::one() - beta), k - j);
                        (w, eval(ri(j as i64)))
                    })
                    .collect(),
            )?,
            Family::NorlundEuler { omega } => {
                let k = omega.len();
                let weight = Rational::new(BigInt::one(), BigInt::from(2u32).pow(k as u32));
                MomentFunctional::mix(
                    (0..1usize << k)
                        .map(|mask| {
                            let point: Rational = (0..k)
                                .filter(|j| mask >> j & 1 == 1)
                                .map(|j| omega[j].clone())
                                .sum();
                            (weight.clone(), eval(point))
                        })
                        .collect(),
                )?
            }
            Family::Strodt { w, x } => MomentFunctional::mix(
                w.iter().cloned().zip(x.iter().cloned().map(eval)).collect(),
            )?,
            Family::BernoulliType { l, m, a } => {
                let terms: Vec<(Rational, Rational)> =
                    (*l..=*m).map(ri).zip(a.iter().cloned()).collect();
                MomentFunctional::from_rule("bernoulli_type", move |n| {
                    terms.iter().fold(Rational::zero(), |acc, (j, aj)| acc + aj * rpow(j, n + 1))
                        / ri(n as i64 + 1)
                })
            }
            Family::Hermite => MomentFunctional::accelerator(1).ramify(2)?.dilate_power(ri(2), 2)?,
            Family::DHermite { d } => MomentFunctional::accelerator(*d).ramify(d + 1)?,
            Family::DHermiteOrth { d } => {
                let r = fact(*d) * ri((*d as i64 + 1).pow(2));
                MomentFunctional::accelerator(*d).ramify(d + 1)?.dilate_power(r, d + 1)?
            }
            Family::Laguerre { alpha } => {
                let a1 = alpha + Rational::one();
                MomentFunctional::from_rule("laguerre", move |n| rising(&a1, n))
            }
            Family::BernoulliHyp { n: big_n } => {
                let big_n = *big_n;
                MomentFunctional::from_rule("bernoulli_hyp", move |n| {
                    ri(big_n as i64) * fact(n) * fact(big_n - 1) / fact(n + big_n)
                })
            }
            Family::Kummer { a, b } => {
                let (a, c) = (a.clone(), a + b);
                MomentFunctional::from_rule("kummer", move |n| rising(&a, n) / rising(&c, n))
            }
            Family::Touchard { lambda } => MomentFunctional::exp_z(lambda.clone()),
        };
        Ok(MomentFunctional::labeled(self.to_string(), inner))
    }

    /// Indicator series `L(e^{xt})` from the closed form of the row, computed
    /// with series arithmetic only (no moments involved).
    pub fn expected_indicator(&self, order: usize) -> Result<TruncatedSeries, FamilyError> {
        self.validate()?;
        let one = TruncatedSeries::one(order);
        let big = order + 1;
        let exp = |a: &Rational, ord: usize| TruncatedSeries::exp_linear(ord, a);
        // (e^{wt} - 1)/(wt)
        let sinhc = |w: &Rational| {
            let e = &exp(w, big) - &TruncatedSeries::one(big);
            e.div_t().unwrap().scale(&w.recip())
        };
        let ae = |beta: &Rational| &one + &(&exp(&Rational::one(), order) - &one).scale(beta);
        let exp_of = |f: TruncatedSeries| f.exp().unwrap();
        Ok(match self {
            Family::Monomial { a } => exp(a, order),
            Family::Bernoulli => sinhc(&Rational::one()),
            Family::BernoulliK { k } => sinhc(&Rational::one()).pow(*k),
            Family::NorlundBernoulli { omega } => {
                omega.iter().fold(one.clone(), |acc, w| acc.series_mul(&sinhc(w)))
            }
            Family::ApostolEuler { beta } => ae(beta),
            Family::Euler => (&one + &exp(&Rational::one(), order)).scale(&Rational::new(1.into(), 2.into())),
            Family::ApostolEulerK { beta, k } => ae(beta).pow(*k),
            Family::NorlundEuler { omega } => omega.iter().fold(one.clone(), |acc, w| {
                acc.series_mul(&(&one + &exp(w, order)).scale(&Rational::new(1.into(), 2.into())))
            }),
            Family::Strodt { w, x } => w
                .iter()
                .zip(x)
                .fold(TruncatedSeries::zero(order), |acc, (wj, xj)| &acc + &exp(xj, order).scale(wj)),
            Family::BernoulliType { l, a, .. } => {
                let sum = a.iter().enumerate().fold(TruncatedSeries::zero(big), |acc, (i, aj)| {
                    &acc + &exp(&ri(l + i as i64), big).scale(aj)
                });
                sum.div_t().map_err(|_| bad("sum of a_j must be 0"))?
            }
            Family::Hermite => exp_of(TruncatedSeries::t(order).pow(2).scale(&Rational::new(1.into(), 2.into()))),
            Family::DHermite { d } => exp_of(TruncatedSeries::t(order).pow(d + 1)),
            Family::DHermiteOrth { d } => {
                let r = fact(*d) * ri((*d as i64 + 1).pow(2));
                exp_of(TruncatedSeries::t(order).pow(d + 1).scale(&r.recip()))
            }
            Family::Laguerre { alpha } => {
                let log1mt = (&one - &TruncatedSeries::t(order)).log().unwrap();
                exp_of(log1mt.scale(&(-(alpha + Rational::one()))))
            }
            Family::BernoulliHyp { n } => {
                // (e^t - sum_{j<N} t^j/j!) / (t^N/N!)
                let e = exp(&Rational::one(), order + n);
                TruncatedSeries::from_fn(order, |i| e.coeff(i + n) * fact(*n))
            }
            Family::Kummer { a, b } => {
                // 1F1(a; a+b; t) from t y'' + (c - t) y' - a y = 0:
                // y_{n+1} = y_n (a + n) / ((n + 1)(c + n))
                let c = a + b;
                let mut y = Vec::with_capacity(order);
                let mut cur = Rational::one();
                for n in 0..order {
                    y.push(cur.clone());
                    let nn = ri(n as i64);
                    cur = cur * (a + &nn) / ((&nn + Rational::one()) * (&c + &nn));
                }
                TruncatedSeries::new(y)
            }
            Family::Touchard { lambda } => {
                exp_of((&exp(&Rational::one(), order) - &one).scale(lambda))
            }
        })
    }

    /// Reference family whose moments this one is expected to share.
    pub fn known_equivalent(&self) -> Option<Family> {
        let one = Rational::one();
        let half = Rational::new(1.into(), 2.into());
        match self {
            Family::Kummer { a, b } if *a == one && *b == one => Some(Family::Bernoulli),
            Family::BernoulliHyp { n: 1 } => Some(Family::Bernoulli),
            Family::BernoulliK { k: 1 } => Some(Family::Bernoulli),
            Family::ApostolEuler { beta } if *beta == half => Some(Family::Euler),
            Family::ApostolEulerK { beta, k: 1 } => Some(Family::ApostolEuler { beta: beta.clone() }),
            Family::NorlundBernoulli { omega } if omega.iter().all(|w| *w == one) => {
                Some(Family::BernoulliK { k: omega.len() })
            }
            Family::NorlundEuler { omega } if omega.len() == 1 && omega[0] == one => Some(Family::Euler),
            Family::Strodt { w, x }
                if w.len() == 2 && w.iter().all(|v| *v == half) && {
                    let mut xs = x.clone();
                    xs.sort();
                    xs == vec![Rational::zero(), one.clone()]
                } =>
            {
                Some(Family::Euler)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    /// `family(id, name=value, …)`, the form accepted by the spec grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family({}", self.id())?;
        for (name, value) in self.params() {
            write!(f, ", {name}={value}")?;
        }
        write!(f, ")")
    }
}

/// A family with its constructed Appell spec and closed-form indicator.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub spec: ShefferSpec,
    pub expected_indicator: TruncatedSeries,
}

/// Order at which [`FamilySpec::expected_indicator`] is stored.
pub const INDICATOR_ORDER: usize = 16;

pub fn make_family(family: Family) -> Result<FamilySpec, FamilyError> {
    let functional = family.functional()?;
    let expected_indicator = family.expected_indicator(INDICATOR_ORDER)?;
    let spec = ShefferSpec::appell(functional)?;
    Ok(FamilySpec { family, spec, expected_indicator })
}

impl FamilySpec {
    /// Indicator of the functional equals the closed form at `order`.
    pub fn indicator_matches(&self, order: usize) -> Result<bool, FamilyError> {
        let got = self.spec.functional().indicator_series(order)?;
        let want = if order <= INDICATOR_ORDER {
            self.expected_indicator.truncate(order)
        } else {
            self.family.expected_indicator(order)?
        };
        Ok(got == want)
    }
}

/// One sample parameter set for every family id, in catalog order.
pub fn catalog_samples() -> Vec<Family> {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    vec![
        Family::Monomial { a: r(1, 2) },
        Family::Bernoulli,
        Family::BernoulliK { k: 2 },
        Family::NorlundBernoulli { omega: vec![r(1, 1), r(1, 2), r(3, 1)] },
        Family::ApostolEuler { beta: r(1, 3) },
        Family::Euler,
        Family::ApostolEulerK { beta: r(1, 3), k: 2 },
        Family::NorlundEuler { omega: vec![r(1, 1), r(2, 1)] },
        Family::Strodt { w: vec![r(1, 3), r(1, 6), r(1, 2)], x: vec![r(-1, 1), r(0, 1), r(5, 2)] },
        Family::BernoulliType { l: 0, m: 2, a: vec![r(-1, 2), r(0, 1), r(1, 2)] },
        Family::Hermite,
        Family::DHermite { d: 2 },
        Family::DHermiteOrth { d: 2 },
        Family::Laguerre { alpha: r(1, 2) },
        Family::BernoulliHyp { n: 3 },
        Family::Kummer { a: r(1, 2), b: r(3, 2) },
        Family::Touchard { lambda: r(2, 3) },
    ]
}

/// Classical signed Stirling numbers of the first kind `s(n,k)`, `n, k <= nmax`,
/// from `s(n+1,k) = s(n,k-1) - n s(n,k)`.
pub fn stirling_first(nmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); nmax + 1]; nmax + 1];
    s[0][0] = BigInt::one();
    for n in 0..nmax {
        for k in 1..=n + 1 {
            s[n + 1][k] = &s[n][k - 1] - BigInt::from(n) * &s[n][k];
        }
    }
    s
}

/// Classical Stirling numbers of the second kind `S(n,k)`, from
/// `S(n+1,k) = k S(n,k) + S(n,k-1)`.
pub fn stirling_second(nmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); nmax + 1]; nmax + 1];
    s[0][0] = BigInt::one();
    for n in 0..nmax {
        for k in 1..=n + 1 {
            s[n + 1][k] = BigInt::from(k) * &s[n][k] + &s[n][k - 1];
        }
    }
    s
}

/// `T_n(λ) = sum_k S(n,k) λ^k` for `n <= nmax`.
pub fn touchard_polynomials(nmax: usize, lambda: &Rational) -> Vec<Rational> {
    let s = stirling_second(nmax);
    (0..=nmax)
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(s[n][k].clone()) * rpow(lambda, k)
            })
        })
        .collect()
}

/// `P_{e^z,λ,n}(x) = sum_j C(n,j) T_j(-λ) x^{n-j}`, the Appell sequence of
/// the functional of `e^z` at `λ`, obtained from the functional of `e^{-z}`.
pub fn exp_entire_appell(nmax: usize, lambda: &Rational) -> Vec<Polynomial> {
    let t = touchard_polynomials(nmax, &-lambda);
    (0..=nmax)
        .map(|n| Polynomial::new((0..=n).map(|k| binom(n, k) * &t[n - k]).collect()))
        .collect()
}

/// `Δ^j(p)` for `j = 0..=jmax`, by direct differences `p(x+1) - p(x)`.
fn forward_differences(p: &Polynomial, jmax: usize) -> Vec<Polynomial> {
    let mut out = vec![p.clone()];
    for _ in 0..jmax {
        let last = out.last().unwrap();
        let next = &last.shift(&Rational::one()) - last;
        out.push(next);
    }
    out
}

/// The closed-form `Δ`-expansions `p_n = sum_j c_j Δ^j(x^n)`:
/// Bernoulli `c_j = (-1)^j/(j+1)`; Euler `c_j = (-1)^j/2^j`;
/// `k`th Bernoulli `c_j = k!/(k+j)! s(k+j,k)`;
/// `k`th Apostol–Euler `c_j = C(j+k-1,j) (-β)^j`.
pub fn known_expansions(family: &Family, nmax: usize) -> Result<Vec<Polynomial>, FamilyError> {
    family.validate()?;
    let coeffs: Vec<Rational> = match family {
        Family::Bernoulli => (0..=nmax)
            .map(|j| Rational::new(if j % 2 == 0 { 1 } else { -1 }.into(), (j + 1).into()))
            .collect(),
        Family::Euler => (0..=nmax)
            .map(|j| rpow(&Rational::new((-1).into(), 2.into()), j))
            .collect(),
        Family::BernoulliK { k } => {
            let s = stirling_first(nmax + k);
            (0..=nmax)
                .map(|j| fact(*k) / fact(k + j) * Rational::from_integer(s[k + j][*k].clone()))
                .collect()
        }
        Family::ApostolEulerK { beta, k } => (0..=nmax)
            .map(|j| binom(j + k - 1, j) * rpow(&-beta, j))
            .collect(),
        other => return Err(FamilyError::UnsupportedFamily(other.id().to_string())),
    };
    Ok((0..=nmax)
        .map(|n| {
            forward_differences(&Polynomial::monomial(n), n)
                .iter()
                .zip(&coeffs)
                .fold(Polynomial::zero(), |acc, (d, c)| &acc + &d.scale(c))
        })
        .collect())
}

/// Euler numbers in the standard convention, `sech t = sum E_n t^n/n!`,
/// for `n <= nmax` (odd ones vanish).
pub fn euler_numbers_standard(nmax: usize) -> Vec<Rational> {
    let order = nmax + 1;
    let cosh = TruncatedSeries::from_egf(order, |n| if n % 2 == 0 { Rational::one() } else { Rational::zero() });
    let sech = cosh.recip().unwrap();
    (0..=nmax).map(|n| sech.egf_coeff(n)).collect()
}

/// Even Euler numbers in the convention `2/(e^t + e^{-t}) = sum i^n E_n t^n/n!`,
/// i.e. `E_{2j} = (-1)^j` times the standard value, all positive.
pub fn euler_numbers_imaginary(jmax: usize) -> Vec<Rational> {
    let std = euler_numbers_standard(2 * jmax);
    (0..=jmax)
        .map(|j| if j.is_odd() { -std[2 * j].clone() } else { std[2 * j].clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::functionals::same_moments;
    use crate::sheffer::{sheffer_egf, verify_characterizations};

    #[test]
    fn every_sample_matches_its_indicator() {
        for fam in catalog_samples() {
            let fs = make_family(fam.clone()).unwrap();
            assert!(fs.indicator_matches(13).unwrap(), "{fam}");
        }
        assert_eq!(catalog_samples().len(), FAMILY_IDS.len());
        for (fam, id) in catalog_samples().iter().zip(FAMILY_IDS) {
            assert_eq!(fam.id(), id);
        }
    }

    #[test]
    fn make_family_examples() {
        let b = make_family(Family::Bernoulli).unwrap();
        let m = b.spec.functional().moments(5).unwrap();
        assert_eq!(m, vec![int(1), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);

        for k in 1..4 {
            let nb = Family::NorlundBernoulli { omega: vec![int(1); k] }.functional().unwrap();
            let bk = Family::BernoulliK { k }.functional().unwrap();
            assert!(same_moments(&nb, &bk, 14).unwrap());
        }

        let lag = Family::Laguerre { alpha: int(0) };
        let l = lag.functional().unwrap();
        for n in 0..10 {
            assert_eq!(l.moment(n).unwrap(), fact(n));
        }
        let geo = TruncatedSeries::from_fn(12, |_| int(1));
        assert_eq!(lag.expected_indicator(12).unwrap(), geo);
    }

    #[test]
    fn parameter_constraints() {
        let cases = vec![
            Family::ApostolEuler { beta: int(0) },
            Family::NorlundBernoulli { omega: vec![int(1), int(0)] },
            Family::Strodt { w: vec![rat(1, 2), rat(1, 3)], x: vec![int(0), int(1)] },
            Family::Strodt { w: vec![int(1)], x: vec![int(0)] },
            Family::BernoulliType { l: 0, m: 2, a: vec![int(1), int(0), int(-1)] },
            Family::BernoulliHyp { n: 0 },
            Family::Laguerre { alpha: int(-1) },
            Family::Kummer { a: int(0), b: int(1) },
            Family::DHermite { d: 0 },
            Family::BernoulliK { k: 0 },
        ];
        for fam in cases {
            assert!(matches!(make_family(fam.clone()), Err(FamilyError::BadParams(_))), "{fam}");
        }
    }

    #[test]
    fn params_round_trip() {
        for fam in catalog_samples() {
            let map: BTreeMap<String, Param> =
                fam.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            assert_eq!(Family::from_params(fam.id(), &map).unwrap(), fam);
        }
        assert!(matches!(
            Family::from_params("nope", &BTreeMap::new()),
            Err(FamilyError::UnknownFamily(_))
        ));
        let mut m = BTreeMap::new();
        m.insert("q".to_string(), Param::Scalar(int(1)));
        assert!(Family::from_params("bernoulli", &m).is_err());
        assert_eq!(
            Family::Kummer { a: int(1), b: rat(1, 2) }.to_string(),
            "family(kummer, a=1, b=1/2)"
        );
        assert_eq!(Param::parse("1/2,1/2").unwrap(), Param::List(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn equivalences() {
        let pairs = [
            (Family::Kummer { a: int(1), b: int(1) }, Family::Bernoulli),
            (Family::ApostolEuler { beta: rat(1, 2) }, Family::Euler),
            (Family::BernoulliHyp { n: 1 }, Family::Bernoulli),
        ];
        for (a, b) in pairs {
            assert_eq!(a.known_equivalent(), Some(b.clone()));
            assert!(same_moments(&a.functional().unwrap(), &b.functional().unwrap(), 16).unwrap());
        }
        // d = 1 with λ^2 = 2 is the classical Hermite family
        let dh = Family::DHermite { d: 1 }.functional().unwrap().dilate_power(int(2), 2).unwrap();
        assert!(same_moments(&dh, &Family::Hermite.functional().unwrap(), 16).unwrap());
    }

    #[test]
    fn samples_pass_characterizations() {
        for fam in catalog_samples() {
            let fs = make_family(fam.clone()).unwrap();
            let polys = sheffer_egf(&fs.spec, 8).unwrap();
            let rep = verify_characterizations(&fs.spec, &polys).unwrap();
            assert!(rep.all_pass(), "{fam}\n{}", rep.to_tsv());
        }
    }

    #[test]
    fn known_expansion_examples() {
        let b = known_expansions(&Family::Bernoulli, 4).unwrap();
        assert_eq!(b[2], Polynomial::new(vec![rat(1, 6), int(-1), int(1)]));
        let e = known_expansions(&Family::Euler, 2).unwrap();
        assert_eq!(e[1], Polynomial::new(vec![rat(-1, 2), int(1)]));
        assert_eq!(
            known_expansions(&Family::BernoulliK { k: 1 }, 10).unwrap(),
            known_expansions(&Family::Bernoulli, 10).unwrap()
        );
        assert!(matches!(
            known_expansions(&Family::Hermite, 3),
            Err(FamilyError::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn touchard_examples() {
        assert_eq!(touchard_polynomials(3, &int(1))[3], int(5));
        let t0 = touchard_polynomials(5, &int(0));
        assert_eq!(t0, vec![int(1), int(0), int(0), int(0), int(0), int(0)]);
        let lam = rat(3, 7);
        assert_eq!(touchard_polynomials(2, &lam)[2], &lam + &lam * &lam);
        let exact = MomentFunctional::exp_z(lam.clone()).moments(10).unwrap();
        assert_eq!(touchard_polynomials(9, &lam), exact);

        let fs = make_family(Family::Touchard { lambda: lam.clone() }).unwrap();
        assert_eq!(sheffer_egf(&fs.spec, 9).unwrap(), exp_entire_appell(9, &lam));
    }

    #[test]
    fn euler_number_conventions() {
        let std = euler_numbers_standard(8);
        assert_eq!(std[2], int(-1));
        assert_eq!(std[4], int(5));
        assert_eq!(euler_numbers_imaginary(4), vec![int(1), int(1), int(5), int(61), int(1385)]);
    }
}

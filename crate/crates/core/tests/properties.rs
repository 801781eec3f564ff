//! Randomised invariants of the exact core, the spec language and the
//! quadrature error estimates.

use proptest::prelude::*;

use umbral::algebra::{int, rat, Polynomial, Rational, TruncatedSeries};
use umbral::cli::{format_spec, parse_spec};
use umbral::functionals::MomentFunctional;
use umbral::numcheck::{integrate_interval, integrate_semiaxis, Decay};
use umbral::operators::DeltaOperator;
use umbral::sheffer::{
    appell_delta_expansion, generalized_stirling, sheffer_egf, sheffer_recurrence, ShefferSpec,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != int(0))
}

fn polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Polynomial::new)
}

/// `b̂_1 ≠ 0` followed by a few arbitrary coefficients.
fn bhat() -> impl Strategy<Value = Vec<Rational>> {
    (nonzero_rational(), prop::collection::vec(small_rational(), 0..3)).prop_map(|(b1, rest)| {
        let mut v = vec![b1];
        v.extend(rest);
        v
    })
}

/// A functional with `L(1) ≠ 0` given by its first moments.
fn functional(count: usize) -> impl Strategy<Value = MomentFunctional> {
    (nonzero_rational(), prop::collection::vec(small_rational(), count)).prop_map(|(m0, rest)| {
        let mut m = vec![m0];
        m.extend(rest);
        MomentFunctional::from_moments(m)
    })
}

/// `t + c_2 t^2 + ...` truncated at `order`.
fn near_identity(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (nonzero_rational(), prop::collection::vec(small_rational(), order - 2)).prop_map(move |(c1, rest)| {
        let mut c = vec![int(0), c1];
        c.extend(rest);
        TruncatedSeries::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversion_is_a_two_sided_inverse(f in near_identity(8)) {
        let g = f.reversion().unwrap();
        let t = TruncatedSeries::t(8);
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
    }

    #[test]
    fn reciprocal_and_exp_log(f in near_identity(8), c in nonzero_rational()) {
        let one = TruncatedSeries::one(8);
        let u = &TruncatedSeries::constant(8, c) + &f;
        prop_assert_eq!(&u * &u.recip().unwrap(), one.clone());
        let v = &one + &f;
        prop_assert_eq!(v.log().unwrap().exp().unwrap(), v);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn shifts_compose(p in polynomial(7), a in small_rational(), b in small_rational()) {
        prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(&a + &b)));
        prop_assert_eq!(p.shift(&a).eval(&b), p.eval(&(&a + &b)));
    }

    #[test]
    fn calculus_on_polynomials(p in polynomial(7), x0 in small_rational()) {
        let q = p.integrate_from(&x0);
        prop_assert_eq!(q.derive(), p.clone());
        prop_assert_eq!(q.eval(&x0), int(0));
        prop_assert_eq!(Polynomial::from_csv(&p.to_csv()).unwrap(), p);
    }

    #[test]
    fn routes_agree_for_random_sheffer(
        delta in bhat(),
        l in functional(10),
        x0 in small_rational(),
    ) {
        let nmax = 7;
        let spec = ShefferSpec::new(DeltaOperator::from_bhat(delta, nmax + 4).unwrap(), l.clone()).unwrap();
        let s = sheffer_egf(&spec, nmax).unwrap();
        prop_assert_eq!(&sheffer_recurrence(&spec, nmax, &x0).unwrap(), &s);

        // 𝔔 s_n = n s_{n-1}, S(s_n) = 0 for n ≥ 1, S(s_0) = 1
        let q = spec.working_delta(nmax).unwrap();
        prop_assert_eq!(l.apply(&s[0]).unwrap(), int(1));
        for n in 1..=nmax {
            prop_assert_eq!(q.apply(&s[n]).unwrap(), s[n - 1].scale(&int(n as i64)));
            prop_assert_eq!(l.apply(&s[n]).unwrap(), int(0));
        }
    }

    #[test]
    fn appell_expansion_ignores_the_auxiliary_delta(
        l in functional(10),
        h in nonzero_rational(),
        aux in bhat(),
    ) {
        let nmax = 7;
        let order = nmax + 4;
        let spec = ShefferSpec::appell(l.clone()).unwrap();
        let p = sheffer_egf(&spec, nmax).unwrap();
        for q in [
            DeltaOperator::derivative(order),
            DeltaOperator::difference(h.clone(), order).unwrap(),
            DeltaOperator::from_bhat(aux.clone(), order).unwrap(),
        ] {
            let (_, got) = appell_delta_expansion(&l, &q, nmax).unwrap();
            prop_assert_eq!(&got, &p, "{}", q);
        }
        // Appell: p_n' = n p_{n-1}
        for n in 1..=nmax {
            prop_assert_eq!(p[n].derive(), p[n - 1].scale(&int(n as i64)));
        }
    }

    #[test]
    fn stirling_tables_are_inverse(delta in bhat()) {
        let nmax = 7;
        let q = DeltaOperator::from_bhat(delta, nmax + 2).unwrap();
        let table = generalized_stirling(q.b(), q.bbar(), nmax).unwrap();
        prop_assert!(table.is_mutually_inverse());
        let basic = q.basic_sequence(nmax).unwrap();
        for (n, qn) in basic.iter().enumerate() {
            for k in 0..=n {
                prop_assert_eq!(table.s(n, k), qn.coeff(k));
            }
        }
    }

    #[test]
    fn spec_format_is_canonical(
        a in small_rational(),
        beta in nonzero_rational(),
        w in 1i64..=5,
        delta in prop::sample::select(vec!["derivative", "difference h=1/2", "series [1, -3/2]"]),
        inner in prop::sample::select(vec!["uniform01", "eval(1/3)", "exp_z(2)", "pow(uniform01, 2)"]),
        nmax in 2usize..8,
    ) {
        let text = format!(
            "sequence s\ndelta = {delta}\nfunctional = conv(translate(dilate({inner}, {beta}), {a}), mix({w}*eval(0) + {}*uniform01))\nnmax = {nmax}\n",
            rat(1 - w, 1),
        );
        let parsed = parse_spec(&text).unwrap();
        let once = format_spec(&parsed);
        let again = parse_spec(&once).unwrap();
        prop_assert_eq!(format_spec(&again), once);
        prop_assert_eq!(parsed.functional.moments(nmax + 1).unwrap(), again.functional.moments(nmax + 1).unwrap());
    }

    #[test]
    fn quadrature_error_is_within_tolerance(k in 0usize..6, c in 0.5f64..4.0, logtol in -11.0f64..-5.0) {
        // ∫_0^∞ s^k e^{-c s} ds = k! / c^{k+1}
        let tol = 10f64.powf(logtol);
        let exact = (1..=k).map(|i| i as f64).product::<f64>() / c.powi(k as i32 + 1);
        let r = integrate_semiaxis(&|s: f64| s.powi(k as i32) * (-c * s).exp(), Decay::Exponential { rate: c }, tol).unwrap();
        prop_assert!((r.value - exact).abs() <= tol, "{} vs {} (est {})", r.value, exact, r.err_estimate);
        prop_assert!(r.err_estimate <= tol);

        let r = integrate_interval(&|s: f64| (c * s).cos(), 0.0, 3.0, tol).unwrap();
        prop_assert!((r.value - (3.0 * c).sin() / c).abs() <= tol);
    }
}

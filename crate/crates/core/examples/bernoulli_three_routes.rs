//! Bernoulli polynomials from the uniform functional on [0, 1], built three
//! ways: generating function, recursion with a left inverse of ∂, and an
//! expansion in powers of the forward difference.

use umbral::algebra::int;
use umbral::functionals::MomentFunctional;
use umbral::operators::DeltaOperator;
use umbral::sheffer::{appell_delta_expansion, sheffer_egf, sheffer_recurrence, ShefferSpec};

fn main() {
    let nmax = 8;
    let l = MomentFunctional::uniform01();
    let spec = ShefferSpec::appell(l.clone()).expect("L(1) = 1");

    let egf = sheffer_egf(&spec, nmax).unwrap();
    let rec = sheffer_recurrence(&spec, nmax, &int(0)).unwrap();
    let delta = DeltaOperator::difference(int(1), nmax + 4).unwrap();
    let (alpha, expanded) = appell_delta_expansion(&l, &delta, nmax).unwrap();

    for (n, b) in egf.iter().enumerate() {
        println!("B_{n}(x) = {b}");
    }
    println!("recursion agrees: {}", rec == egf);
    println!("Δ-expansion agrees: {}", expanded == egf);
    // p_n(x) = Σ α_k/k! Δ^k x^n; the α_k here are B_n(0) in the falling basis
    println!("α = {}", alpha.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
}

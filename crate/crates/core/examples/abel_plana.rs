//! Bernoulli polynomials by quadrature: the inverse of the averaging
//! operator written as an Abel–Plana type integral against 1/(e^{2πs} − 1).

use umbral::algebra::{to_f64, Polynomial, Rational};
use umbral::families::{make_family, Family};
use umbral::numcheck::bernoulli_abel_plana;
use umbral::sheffer::{construct, Route};

fn main() {
    let spec = make_family(Family::Bernoulli).unwrap().spec;
    let exact = construct(&spec, Route::Egf, 10).unwrap();
    println!("n\tx\texact\tquadrature\terror\testimate\tevals");
    for n in [0, 1, 2, 5, 10] {
        for x in [0.0, 0.5, 2.0] {
            let e = to_f64(&exact[n].eval(&Rational::from_float(x).unwrap()));
            // an absolute tolerance below the rounding floor of |B_n(x)| is refused
            let tol = 1e-11 * e.abs().max(1.0);
            let q = match bernoulli_abel_plana(&Polynomial::monomial(n), x, tol) {
                Ok(q) => q,
                Err(err) => {
                    println!("{n}\t{x}\t{e:.15}\t-\t-\t-\t{err}");
                    continue;
                }
            };
            println!("{n}\t{x}\t{e:.15}\t{:.15}\t{:.1e}\t{:.1e}\t{}", q.value, (q.value - e).abs(), q.err_estimate, q.evaluations);
        }
    }
}

//! Euler polynomials and Euler numbers as integrals against sech(πs/2).

use umbral::algebra::{to_f64, Polynomial, Rational};
use umbral::families::{euler_numbers_imaginary, make_family, Family};
use umbral::numcheck::{euler_integral_rep, euler_number_integral};
use umbral::sheffer::{construct, Route};

fn main() {
    let spec = make_family(Family::Euler).unwrap().spec;
    let exact = construct(&spec, Route::Egf, 8).unwrap();
    for n in [1, 4, 8] {
        for x in [0.0, 0.5, 1.0] {
            let q = euler_integral_rep(&Polynomial::monomial(n), x, 1e-11).unwrap();
            let e = to_f64(&exact[n].eval(&Rational::from_float(x).unwrap()));
            println!("E_{n}({x}) = {e:.12}  quadrature {:.12}  err {:.1e}", q.value, (q.value - e).abs());
        }
    }
    for (j, e) in euler_numbers_imaginary(4).iter().enumerate() {
        let q = euler_number_integral(j, 1e-10).unwrap();
        println!("∫ s^{} sech(πs/2) ds = {:.10}  (exact {e})", 2 * j, q.value);
    }
}

//! Accelerator kernels C_α and the d-Hermite polynomials they generate.

use num_complex::Complex64;
use umbral::families::{make_family, Family};
use umbral::numcheck::{
    accelerator_eval, accelerator_moment, gamma_eval, hermite_d_check, AcceleratorKernel, AcceleratorParams,
    Direction,
};
use umbral::sheffer::{construct, Route};

fn main() {
    // C_2 is a Gaussian, C_3 an Airy function
    let c2 = AcceleratorParams::new(2.0).unwrap();
    for z in [0.0, 1.0, 3.0] {
        let v = accelerator_eval(c2, Complex64::new(z, 0.0)).unwrap();
        let closed = (-z * z / 4.0_f64).exp() / std::f64::consts::PI.sqrt();
        println!("C_2({z}) = {:.15}  closed form {closed:.15}", v.re);
    }
    let k3 = AcceleratorKernel::new(AcceleratorParams::new(3.0).unwrap());
    for s in [0.0, 1.0, 6.0, 15.0] {
        println!("C_3({s}) = {:.6e}", k3.eval(s).unwrap());
    }

    // ∫ sⁿ C_{d+1}(s) ds = n!/Γ(1 + n/(d+1))
    let d = 2;
    for n in 0..=6 {
        let q = accelerator_moment(d, n, 1e-9).unwrap();
        let exact = (1..=n).map(|i| i as f64).product::<f64>() / gamma_eval(1.0 + n as f64 / 3.0).unwrap();
        println!("moment n={n}: {:.12} vs {exact:.12}", q.value);
    }

    let h = construct(&make_family(Family::DHermite { d }).unwrap().spec, Route::Egf, 5).unwrap();
    for (n, p) in h.iter().enumerate() {
        let inv = hermite_d_check(d, n, 0.5, Direction::Inverse, 1e-8).unwrap();
        let fwd = hermite_d_check(d, n, 0.5, Direction::Forward, 1e-8).unwrap();
        println!("H_{n}(x) = {p}\n  at 1/2: inverse rep {:.10}, forward rep {:.10} (expect 3·xⁿ = {})", inv.value, fwd.value, 3.0 * 0.5f64.powi(n as i32));
    }
}

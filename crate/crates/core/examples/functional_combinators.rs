//! Building functionals from others: translation, dilation, powers,
//! mixtures and convolutions, seen through their moments and indicators.

use umbral::algebra::rat;
use umbral::functionals::{same_moments, MomentFunctional};

fn show(name: &str, l: &MomentFunctional) {
    let m = l.moments(7).unwrap();
    let m: Vec<String> = m.iter().map(ToString::to_string).collect();
    println!("{name:<28} moments {}", m.join(", "));
}

fn main() {
    let u = MomentFunctional::uniform01();
    show("uniform on [0,1]", &u);
    show("translated by -1/2", &u.translate(rat(-1, 2)));
    show("dilated by 2", &u.dilate(rat(2, 1)).unwrap());
    show("third power", &u.power(3).unwrap());

    // Euler's functional as a two-point mixture
    let euler = MomentFunctional::mix(vec![
        (rat(1, 2), MomentFunctional::eval(rat(0, 1))),
        (rat(1, 2), MomentFunctional::eval(rat(1, 1))),
    ])
    .unwrap();
    show("(δ_0 + δ_1)/2", &euler);

    // convolution multiplies indicators
    let conv = MomentFunctional::convolve(vec![u.clone(), u.clone()]).unwrap();
    println!("u * u has the moments of u^2: {}", same_moments(&conv, &u.power(2).unwrap(), 12).unwrap());
    println!("indicator of u: {}", u.indicator_series(6).unwrap());
    println!("indicator of u*u: {}", conv.indicator_series(6).unwrap());
}

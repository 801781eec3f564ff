//! A Sheffer sequence for a non-derivative delta operator, with the full
//! set of characterizations checked exactly.

use umbral::algebra::{int, rat};
use umbral::functionals::MomentFunctional;
use umbral::operators::DeltaOperator;
use umbral::sheffer::{construct, verify_characterizations, Route, ShefferSpec};

fn main() {
    let nmax = 6;
    // B̄(t) = t + t² (coefficients are b̂_n with B̄ = Σ b̂_n tⁿ/n!)
    let q = DeltaOperator::from_bhat(vec![int(1), int(2)], nmax + 4).unwrap();
    let l = MomentFunctional::uniform01().translate(rat(-1, 2));
    let spec = ShefferSpec::new(q, l).unwrap();

    let egf = construct(&spec, Route::Egf, nmax).unwrap();
    for x0 in [int(0), int(1), rat(-1, 2)] {
        let rec = umbral::sheffer::sheffer_recurrence(&spec, nmax, &x0).unwrap();
        println!("recursion from x0 = {x0}: {}", if rec == egf { "same" } else { "DIFFERENT" });
    }
    for (n, s) in egf.iter().enumerate() {
        println!("s_{n}(x) = {s}");
    }

    let report = verify_characterizations(&spec, &egf).unwrap();
    print!("{}", report.to_tsv());
    println!("all identities hold: {}", report.all_pass());
}

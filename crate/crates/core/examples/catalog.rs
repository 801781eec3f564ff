//! Every catalog family at a sample parameter set: the first polynomials,
//! the indicator check and the characterization report.

use umbral::families::{catalog_samples, make_family};
use umbral::sheffer::{construct, verify_characterizations, Route};

fn main() {
    let nmax = 4;
    for family in catalog_samples() {
        let fs = make_family(family.clone()).unwrap();
        let polys = construct(&fs.spec, Route::Egf, nmax).unwrap();
        let report = verify_characterizations(&fs.spec, &polys).unwrap();
        println!(
            "{family}: indicator {}, {} identities {}",
            if fs.indicator_matches(nmax + 1).unwrap() { "ok" } else { "MISMATCH" },
            report.entries.len(),
            if report.all_pass() { "hold" } else { "FAIL" },
        );
        for (n, p) in polys.iter().enumerate().skip(1) {
            println!("  p_{n}(x) = {p}");
        }
    }
}

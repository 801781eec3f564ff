//! Sequences described in the small spec language, parsed, normalised and
//! handed to the library; an error shows its line and column.

use umbral::cli::{format_spec, parse_spec};
use umbral::sheffer::{construct, Route};

const TEXT: &str = "\
# second-order Euler-type polynomials with a shifted difference operator
sequence euler2
delta      = difference h=1/2
functional = pow(mix(1/2*eval(0) + 1/2*eval(1)), 2)
nmax       = 5
";

fn main() {
    let spec = parse_spec(TEXT).unwrap();
    print!("canonical form:\n{}", format_spec(&spec));
    let sheffer = spec.sheffer().unwrap();
    for (n, p) in construct(&sheffer, Route::Recurrence, spec.nmax).unwrap().iter().enumerate() {
        println!("s_{n}(x) = {p}");
    }

    let broken = "sequence x\ndelta = derivative\nfunctional = conv(uniform01, eval(1/))\nnmax = 3\n";
    println!("error: {}", parse_spec(broken).unwrap_err());
}

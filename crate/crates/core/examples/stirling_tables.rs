//! Generalized Stirling numbers attached to a pair B, B̄ of mutually
//! inverse series. With B̄ = eᵗ − 1 they are the classical ones.

use umbral::algebra::{int, TruncatedSeries};
use umbral::operators::DeltaOperator;
use umbral::sheffer::generalized_stirling;

fn print_table(name: &str, nmax: usize, entry: impl Fn(usize, usize) -> String) {
    println!("{name}");
    for n in 0..=nmax {
        let row: Vec<String> = (0..=n).map(|k| entry(n, k)).collect();
        println!("  {}", row.join("\t"));
    }
}

fn main() {
    let nmax = 7;
    let order = nmax + 1;
    let bbar = &TruncatedSeries::exp_linear(order, &int(1)) - &TruncatedSeries::one(order);
    let b = (&TruncatedSeries::one(order) + &TruncatedSeries::t(order)).log().unwrap();
    let t = generalized_stirling(&b, &bbar, nmax).unwrap();
    print_table("s(n,k), first kind", nmax, |n, k| t.s(n, k).to_string());
    print_table("S(n,k), second kind", nmax, |n, k| t.big_s(n, k).to_string());
    println!("mutually inverse: {}", t.is_mutually_inverse());

    // any delta operator works; here B̄(t) = t + t²
    let q = DeltaOperator::from_bhat(vec![int(1), int(2)], order).unwrap();
    let g = generalized_stirling(q.b(), q.bbar(), nmax).unwrap();
    print_table("s(n,k) for B̄ = t + t²", nmax, |n, k| g.s(n, k).to_string());
    println!("mutually inverse: {}", g.is_mutually_inverse());
}

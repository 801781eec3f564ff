//! Run every numeric suite and summarise the worst error of each.

use std::time::Instant;

use umbral::numcheck::{run_suite, VerifyTarget};

fn main() {
    let targets = [
        (VerifyTarget::AbelPlana, 1e-9),
        (VerifyTarget::EulerRep, 1e-9),
        (VerifyTarget::Weierstrass, 1e-10),
        (VerifyTarget::DHermite(2), 1e-6),
        (VerifyTarget::AcceleratorMoments(1), 1e-8),
        (VerifyTarget::AcceleratorMoments(2), 1e-8),
        (VerifyTarget::AcceleratorMoments(3), 1e-8),
    ];
    for (target, tol) in targets {
        let start = Instant::now();
        let rows = run_suite(target, tol).expect("suite runs");
        let worst = rows
            .iter()
            .max_by(|a, b| a.abs_err.total_cmp(&b.abs_err))
            .expect("non-empty suite");
        let failed = rows.iter().filter(|r| !r.pass).count();
        println!(
            "{target:<26} rows={:<3} failed={failed:<3} worst={:.2e} ({} {}) evals={} in {:.2?}",
            rows.len(),
            worst.abs_err,
            worst.check_id,
            worst.params,
            rows.iter().map(|r| r.evaluations).sum::<usize>(),
            start.elapsed()
        );
        for r in rows.iter().filter(|r| !r.pass) {
            println!("  FAIL {} {} exact={} quad={} err={:.2e} {:?}", r.check_id, r.params, r.exact, r.quadrature, r.abs_err, r.error);
        }
    }
}

//! Floating-point checks of the integral representations.
//!
//! The exact core produces the reference values; this module evaluates the
//! corresponding integrals numerically (accelerator functions, Abel–Plana,
//! the Euler and Weierstrass transforms, d-Hermite identities) and compares.
//! Complex numbers appear only here.

mod accelerator;
mod gamma;
mod quadrature;
mod reps;
mod suite;

pub use accelerator::{
    accelerator_contour, accelerator_eval, accelerator_series, AcceleratorKernel, AcceleratorParams,
};
pub use gamma::{gamma_eval, ln_gamma};
pub use quadrature::{integrate_interval, integrate_semiaxis, Decay, QuadratureResult};
pub use reps::{
    accelerator_moment, bernoulli_abel_plana, euler_integral_rep, euler_number_integral,
    hermite_d_check, weierstrass_forward, weierstrass_inverse, Direction,
};
pub use suite::{rows_to_tsv, run_suite, VerifyRow, VerifyTarget};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("argument {0} outside the domain")]
    DomainError(f64),
    #[error("series not converged after {terms} terms")]
    TruncationFailure { terms: usize },
    #[error("quadrature stalled at {value} with error {err:e} > {tol:e}")]
    NoConvergence { value: f64, err: f64, tol: f64 },
    #[error("integrand does not decay (still significant at s = {at})")]
    RayDivergence { at: f64 },
    #[error("non-finite integrand near s = {at}")]
    NonFinite { at: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

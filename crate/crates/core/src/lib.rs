//! Generalized confluent hypergeometric solutions of the confluent Heun
//! equation
//!
//! ```text
//! u'' + (γ/z + δ/(z-1) + ε) u' + (αz - q)/(z(z-1)) u = 0
//! ```
//!
//! When a characteristic exponent of a regular singularity is a non-zero
//! integer, the equation admits solutions given by a single generalized
//! hypergeometric function (`pFp` for ε ≠ 0, `pF(p+1)` for ε = 0) for a
//! finite set of accessory parameters `q`. This crate computes that set,
//! builds the corresponding series, and checks every result against an
//! independent Frobenius recurrence and the ODE itself.
//!
//! Module map:
//!
//! - [`poly`]: complex polynomial arithmetic and root finding
//! - [`che`]: equation parameters, case classification, parameter maps
//! - [`pi_system`]: the auxiliary polynomial system and the accessory spectrum
//! - [`ghf`]: generalized hypergeometric series and solution construction
//! - [`frobenius`]: Frobenius recurrence and ODE residual oracle
//! - [`golden`]: closed-form accessory polynomials for N ≤ 3
//! - [`verify`]: per-root verification reports
//! - [`lambert`], [`two_state`]: the driven two-state demonstration

pub mod che;
pub mod error;
pub mod frobenius;
pub mod ghf;
pub mod golden;
pub mod lambert;
mod linalg;
pub mod pi_system;
pub mod poly;
pub mod two_state;
pub mod verify;

pub use num_complex::Complex64;

pub use che::{
    classify, shift_delta_exponent, swap_singularities, validate_params, CaseClass, CaseKind,
    CheParams, Diagnostic, Route,
};
pub use error::{Error, Result};
pub use frobenius::{frobenius_coefficients, frobenius_eval, ode_residual, FrobeniusExpansion};
pub use ghf::{
    construct_solutions, ghf_coefficients, ghf_eval, solution_for_q, solution_set,
    ConstructedSolution, GhfSolution, GhfValue, SeriesCoefficients, SolutionSet,
};
pub use pi_system::{
    accessory_polynomial, consistency_relations, evaluate_pi, sigma_linear_system,
    solve_auxiliary_parameters, AccessorySpectrum, Relations, SigmaVector,
};
pub use poly::{eval_poly, interpolate_poly, poly_from_roots, roots_of_poly, Poly};

/// Shorthand for a complex literal.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

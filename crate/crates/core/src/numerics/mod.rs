//! Shared numerical kernel: bracketed root finding, fixed-step radial ODE
//! integration, central differences and the cylinder/spherical special
//! functions used by the solver modules.
//!
//! Everything in here is a pure function of its inputs.

mod ode;
mod roots;
pub mod special;

pub use ode::{integrate_radial, integrate_radial_trace, OdeState, DEFAULT_ODE_STEPS};
pub use roots::{bracket_scan, find_root, find_root_with, Bracket, MAX_ITERATIONS};
pub use special::{
    bessel_j, bessel_j_prime, bessel_k_mod, bessel_k_mod_scaled, riccati_chi, riccati_psi,
};

/// Default absolute tolerance for algebraic roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Default tolerance for eigenvalue residuals.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

/// Symmetric difference quotient `(f(x+h) - f(x-h)) / 2h`.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

//! Special functions and quadrature rules used by the potential evaluators.
//!
//! Everything here is real, double precision and pure. Quantities that grow
//! quickly (Hermite polynomials, factorials, Bessel functions) are carried in
//! weighted or logarithmic form.

mod bessel;
mod elliptic;
mod factorial;
mod hermite;
mod quadrature;

pub use bessel::{bessel_i_scaled, bessel_i_scaled_all};
pub use elliptic::{agm, elliptic_k};
pub use factorial::{gamma_stirling, ln_factorial, ln_gamma, STIRLING_COEFFS};
pub use hermite::{hermite_phys, hermite_weighted, hermite_weighted_all};
pub use quadrature::{gauss_rule, QuadratureKind, QuadratureRule};

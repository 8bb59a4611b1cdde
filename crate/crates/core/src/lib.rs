//! Potential functions in four settings: Euclidean space, the cubic lattice,
//! continuous phase space and discrete phase space.
//!
//! Every setting exposes its potential, the operators it is built from and
//! the identities those operators satisfy, so that each claim can be checked
//! numerically:
//!
//! * [`continuum`]: the Coulomb potential `1/(4π|x|)`, finite-difference
//!   Laplacians and translations as a truncated exponential of `c·∂`.
//! * [`lattice`]: difference operators on `ℤ³` and the lattice Green's
//!   function `U₀`, evaluated through a one-dimensional Bessel integral.
//! * [`phasespace`]: `P = (p - i∂_q)/√2`, `Q = (q + i∂_p)/√2` and the
//!   singular potential `Ω₀`.
//! * [`dps_ops`] / [`dps_greens`]: the weighted difference operators
//!   `Δ#`, `Δ°` on non-negative integers, the exact commutator, and the
//!   non-singular potential `W₀`.
//! * [`variational`]: action sums, Euler-Lagrange residuals and boundary
//!   terms on a two-dimensional index domain.

pub mod continuum;
pub mod dps_greens;
pub mod dps_ops;
pub mod error;
pub mod lattice;
pub mod phasespace;
pub mod rng;
pub mod specfun;
pub mod variational;

pub use error::{Error, Result};

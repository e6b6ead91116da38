//! Numerics for the harmonic oscillator with a time-dependent frequency.
//!
//! The central object is the auxiliary amplitude ρ(t) solving
//! ρ̈ + ω(t)²ρ = 1/(m₀²ρ³) ([`ermakov`]). From it the library derives the
//! quadratic invariant of the motion, squeezing parameters and variances
//! ([`squeezing`]), and the full time-dependent wave functions with their
//! accumulated phases ([`wavefunction`]). Everything can be cross-checked
//! against a finite-difference Schrödinger propagator ([`oracle`]) that
//! never touches the analytic machinery.
//!
//! Supporting layers: frequency profiles ([`profiles`]), the classical mode
//! pair and a parametrically driven swing ([`classical`]), fundamental
//! solutions of the periodic linear equation ([`mathieu`]), an adaptive
//! Runge–Kutta integrator with dense output ([`ode`]), adaptive quadrature
//! ([`quad`]), and deterministic pairwise summation ([`sum`]).

// input validation deliberately writes `!(x >= y)` instead of `x < y`:
// the negated form also rejects NaN arguments
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod ermakov;
pub mod mathieu;
pub mod ode;
pub mod oracle;
pub mod profiles;
pub mod quad;
pub mod squeezing;
pub mod sum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use num_complex::Complex64;

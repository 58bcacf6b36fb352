//! Numerical tools for the weighted Leibenson equation `ρ ∂ₜu = Δ_p u^q`
//! on radially symmetric weighted model manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`params`] holds the exponent algebra (fast-diffusion constant `D`,
//!   Sobolev exponent `κ`, the admissible energy exponent `σ_min`, `θ`,
//!   admissible ranges for the density exponent `l`, extinction bounds).
//! * [`geometry`] describes weighted models through their area function,
//!   Sobolev weight and density, together with radial grids and quadrature.
//! * [`exact`] evaluates the self-similar extinction profile on `ℝⁿ` and
//!   measures PDE residuals by finite differences.
//! * [`solver`] is a conservative explicit finite-volume integrator.
//! * [`diagnostics`] checks the energy chain (Caccioppoli inequality,
//!   Hölder step, Sobolev probe, ODE comparison) on discrete solutions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod params;
pub mod solver;

pub use error::{Error, Result};

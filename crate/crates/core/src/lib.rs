//! Six-field maximum-entropy model of polyatomic gases with dynamic pressure.
//!
//! The crate is organised bottom-up:
//!
//! * [`gas`] — molecular parameters, the macroscopic state `(ρ, u, e, Π)` and
//!   its admissibility domain;
//! * [`kinematics`] — the Borgnakke–Larsen collision transformation, its
//!   Jacobian and the two cross-section models;
//! * [`closure`] — maximum-entropy distributions, multipliers, entropies and
//!   every closed-form production term / relaxation time;
//! * [`quadrature`] — independent numerical integration of the kinetic
//!   expressions, used as an oracle for the closed forms;
//! * [`shock`] — Rankine–Hugoniot states and the planar shock-structure
//!   solver (continuous and sub-shock profiles);
//! * [`verification`] — the oracle/closed-form check suite that backs the
//!   `verify` command.
//!
//! Data-parallel loops go through [`Exec`]; with the `parallel` feature
//! disabled every policy runs sequentially with identical results.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closure;
pub mod error;
pub mod exec;
pub mod gas;
pub mod kinematics;
pub mod quadrature;
pub mod shock;
pub mod special;
pub mod verification;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gas::{GasParameters, MacroState6};
pub use kinematics::{CollisionState, CrossSection};
pub use nalgebra::Vector3;

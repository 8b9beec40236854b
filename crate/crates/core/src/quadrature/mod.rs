//! Numerical-integration oracle for the closed forms of [`crate::closure`].
//!
//! Velocity integrals are Gaussian-weighted: radial parts are truncated at
//! `radial_cutoff_sigmas` standard deviations (tail mass bounded analytically
//! by the regularised incomplete gamma function) and integrated either
//! adaptively or with composite rules whose first panel absorbs the
//! `x^p` endpoint power. Internal-energy integrals use generalized
//! Gauss–Laguerre rules after rescaling `I = t/λ` with the exponential rate
//! `λ` of the distribution.

pub mod adaptive;
pub mod oracle;
pub mod rules;

pub use adaptive::{adaptive_integrate, Domain};
pub use oracle::{
    collision_moment, integrate_entropy, integrate_entropy_production, integrate_flux_moments,
    integrate_moments, integrate_production, FluxMoments, MomentEstimate, TestFunction,
};
pub use rules::GaussRule;

use crate::error::{require, Result};
use crate::exec::Exec;
use crate::special::gamma_upper_regularized;

/// Highest radial power `x^n` the oracles integrate against a Gaussian; the
/// cutoff check bounds the tail mass of this worst case.
const WORST_RADIAL_POWER: f64 = 10.0;

/// Tolerances and truncation for the oracle integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_subdivisions: usize,
    pub radial_cutoff_sigmas: f64,
    pub exec: Exec,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-14,
            max_subdivisions: 4000,
            radial_cutoff_sigmas: 12.0,
            exec: Exec::default(),
        }
    }
}

impl QuadSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn validate(&self) -> Result<()> {
        require(
            self.rel_tol > 0.0 && self.rel_tol <= 1e-3,
            "rel_tol",
            "lie in (0, 1e-3]",
            self.rel_tol,
        )?;
        require(
            self.abs_floor >= 0.0 && self.abs_floor.is_finite(),
            "abs_floor",
            "be non-negative",
            self.abs_floor,
        )?;
        require(
            self.max_subdivisions >= 1,
            "max_subdivisions",
            "be at least 1",
            self.max_subdivisions as f64,
        )?;
        let tail = truncated_tail_mass(WORST_RADIAL_POWER, self.radial_cutoff_sigmas);
        require(
            tail < self.rel_tol / 10.0,
            "radial_cutoff_sigmas",
            "truncate less than rel_tol/10 of the Gaussian tail mass",
            self.radial_cutoff_sigmas,
        )
    }
}

/// Relative mass beyond `cutoff` standard deviations of `x^power e^{−x²/2}`
/// on `[0, ∞)`: `Q((power+1)/2, cutoff²/2)`.
pub fn truncated_tail_mass(power: f64, cutoff: f64) -> f64 {
    if !(cutoff > 0.0) {
        return 1.0;
    }
    gamma_upper_regularized(0.5 * (power + 1.0), 0.5 * cutoff * cutoff)
}

/// A value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

//! Planar shock structure of the six-field system.
//!
//! In dimensionless variables (upstream density and temperature scaled to
//! one, velocity to the upstream sound speed) three of the four shock
//! equations integrate exactly to the fluxes
//!
//! ```text
//! J = ρu,   P = ρu² + c(ρT + Π),   Q = (ρu²/2 + (α+5/2)ρT + cΠ) u,
//! ```
//!
//! with `c = (5+2α)/(7+2α)`. Every field is then an algebraic function of
//! `u`, and the balance law for the trace reduces to the scalar equation
//! `(5P − 8Ju) du/dξ = S(u)`. Profiles are computed with `u` as the
//! independent variable: `ξ(u) = ∫ (5P − 8Jw)/S(w) dw`, evaluated by
//! adaptive quadrature between sample points.

pub mod profile;
pub mod reduced;
pub mod rh;

pub use profile::{
    normalize_profile, solve, solve_continuous, solve_subshock, NormalizedProfile,
    NormalizedSample, ProfileSample, ShockProfile, Subshock,
};
pub use reduced::{trace_flux, Fluxes, ReducedSystem};
pub use rh::{critical_mach, full_jump_state, rh_euler, rh_full, sound_ratio, ShockState};

use crate::error::{require, Result};
use crate::gas::GasParameters;
use crate::kinematics::CrossSection;

/// Numerical controls of the profile computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationControls {
    /// Relative tolerance of the `ξ(u)` quadrature.
    pub rel_tol: f64,
    /// Endpoint tolerance: launch and termination states lie within this
    /// distance of the equilibria (all fields).
    pub eps_eq: f64,
    /// Largest admissible extent of the profile in `ξ`.
    pub max_span: f64,
    /// Number of samples on the continuous part.
    pub samples: usize,
    /// Half-width of the excluded band around the critical Mach number.
    pub threshold_guard: f64,
}

impl Default for IntegrationControls {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            eps_eq: 1e-6,
            max_span: 1e6,
            samples: 800,
            threshold_guard: 1e-6,
        }
    }
}

impl IntegrationControls {
    pub fn validate(&self) -> Result<()> {
        require(
            self.rel_tol > 0.0 && self.rel_tol <= 1e-3,
            "rel_tol",
            "lie in (0, 1e-3]",
            self.rel_tol,
        )?;
        require(
            self.eps_eq > 0.0 && self.eps_eq < 0.1,
            "eps_eq",
            "lie in (0, 0.1)",
            self.eps_eq,
        )?;
        require(
            self.max_span > 0.0,
            "max_span",
            "be positive",
            self.max_span,
        )?;
        require(
            self.samples >= 16,
            "samples",
            "be at least 16",
            self.samples as f64,
        )?;
        require(
            self.threshold_guard >= 0.0,
            "threshold_guard",
            "be non-negative",
            self.threshold_guard,
        )
    }
}

/// Upstream Mach number, gas exponent and source exponents `(s*, α*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockProblem {
    mach0: f64,
    alpha: f64,
    s_star: f64,
    alpha_star: f64,
    pub controls: IntegrationControls,
}

impl ShockProblem {
    pub fn new(mach0: f64, alpha: f64, s_star: f64, alpha_star: f64) -> Result<Self> {
        require(mach0.is_finite() && mach0 > 1.0, "mach0", "exceed 1", mach0)?;
        require(
            alpha.is_finite() && alpha > -1.0,
            "alpha",
            "exceed -1",
            alpha,
        )?;
        require(s_star.is_finite(), "s_star", "be finite", s_star)?;
        require(
            alpha_star.is_finite(),
            "alpha_star",
            "be finite",
            alpha_star,
        )?;
        Ok(Self {
            mach0,
            alpha,
            s_star,
            alpha_star,
            controls: IntegrationControls::default(),
        })
    }

    /// Source exponents taken from a cross-section model.
    pub fn from_cross_section(
        mach0: f64,
        params: &GasParameters,
        spec: &CrossSection,
    ) -> Result<Self> {
        let (s_star, alpha_star) = spec.source_exponents(params.alpha());
        Self::new(mach0, params.alpha(), s_star, alpha_star)
    }

    pub fn with_controls(mut self, controls: IntegrationControls) -> Self {
        self.controls = controls;
        self
    }

    pub fn mach0(&self) -> f64 {
        self.mach0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s_star(&self) -> f64 {
        self.s_star
    }

    pub fn alpha_star(&self) -> f64 {
        self.alpha_star
    }
}

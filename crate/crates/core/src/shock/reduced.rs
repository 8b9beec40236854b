//! The reduced scalar problem: fields as functions of `u`, and the source.

use super::rh::{sound_ratio, ShockState};
use super::ShockProblem;
use crate::error::{Error, Result};

/// Conserved fluxes of mass, momentum and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fluxes {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

impl Fluxes {
    /// Fluxes carried by a state.
    pub fn of(state: &ShockState, alpha: f64) -> Self {
        let c = sound_ratio(alpha);
        let ShockState {
            rho,
            u,
            temperature: t,
            pi,
        } = *state;
        Self {
            mass: rho * u,
            momentum: rho * u * u + c * (rho * t + pi),
            energy: (0.5 * rho * u * u + (alpha + 2.5) * rho * t + c * pi) * u,
        }
    }

    /// Largest relative deviation from `other`, component-wise.
    pub fn max_rel_deviation(&self, other: &Fluxes) -> f64 {
        let r = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        r(self.mass, other.mass)
            .max(r(self.momentum, other.momentum))
            .max(r(self.energy, other.energy))
    }
}

/// Flux of the trace balance law, `ρu³ + 5c(ρT + Π)u`.
pub fn trace_flux(state: &ShockState, alpha: f64) -> f64 {
    let c = sound_ratio(alpha);
    let ShockState {
        rho,
        u,
        temperature: t,
        pi,
    } = *state;
    rho * u * u * u + 5.0 * c * (rho * t + pi) * u
}

/// The shock problem reduced to one unknown `u` at fixed fluxes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSystem {
    alpha: f64,
    c: f64,
    s_star: f64,
    alpha_star: f64,
    fluxes: Fluxes,
    /// Leading coefficient and second root of `uΠ(u)`, a quadratic that
    /// vanishes at both equilibria.
    pi_lead: f64,
    pi_root: f64,
}

impl ReducedSystem {
    /// Fluxes fixed by the upstream equilibrium `(1, M0, 1, 0)`.
    pub fn new(problem: &ShockProblem) -> Self {
        let m = problem.mach0();
        let alpha = problem.alpha();
        let c = sound_ratio(alpha);
        let fluxes = Fluxes {
            mass: m,
            momentum: m * m + c,
            energy: (0.5 * m * m + alpha + 2.5) * m,
        };
        // (α+5/2−c) uΠ = (α+5/2)(Pu − Ju²)/c − Q + Ju²/2 = a2 u² + a1 u − Q.
        let a2 = fluxes.mass * (0.5 - (alpha + 2.5) / c);
        Self {
            alpha,
            c,
            s_star: problem.s_star(),
            alpha_star: problem.alpha_star(),
            fluxes,
            pi_lead: a2 / (alpha + 2.5 - c),
            pi_root: -fluxes.energy / (a2 * m),
        }
    }

    pub fn fluxes(&self) -> Fluxes {
        self.fluxes
    }

    /// All fields from `u`, using the mass, momentum and energy integrals.
    pub fn recover(&self, u: f64) -> ShockState {
        let Fluxes {
            mass: j,
            momentum: p,
            ..
        } = self.fluxes;
        let rho = j / u;
        // A = ρT + Π and B = (α+5/2)ρT + cΠ are linear in the fluxes; Π is
        // taken from its factored form, exact near both equilibria.
        let a = (p - j * u) / self.c;
        // The upstream root is u = M0 = J.
        let pi = self.pi_lead * (u - j) * (u - self.pi_root) / u;
        let rho_t = a - pi;
        ShockState {
            rho,
            u,
            temperature: rho_t / rho,
            pi,
        }
    }

    /// Coefficient of `du/dξ` in the reduced equation, `5P − 8Ju`.
    pub fn denominator(&self, u: f64) -> f64 {
        5.0 * self.fluxes.momentum - 8.0 * self.fluxes.mass * u
    }

    /// Velocity at which the reduced equation is singular.
    pub fn singular_velocity(&self) -> f64 {
        5.0 * self.fluxes.momentum / (8.0 * self.fluxes.mass)
    }

    /// Trace flux expressed through the fluxes, `5Pu − 4Ju²`.
    pub fn trace_flux(&self, u: f64) -> f64 {
        5.0 * self.fluxes.momentum * u - 4.0 * self.fluxes.mass * u * u
    }

    /// Production of the trace balance, `−3cρΠ (T + Π/ρ)^{s*} (T − 3Π/(2(α+1)ρ))^{−2α*}`.
    pub fn source(&self, u: f64) -> Result<f64> {
        let st = self.recover(u);
        if st.pi == 0.0 {
            return Ok(0.0);
        }
        let translational = st.temperature + st.pi / st.rho;
        let internal = st.temperature - 1.5 * st.pi / ((self.alpha + 1.0) * st.rho);
        if !(st.rho > 0.0 && translational > 0.0 && internal > 0.0) {
            return Err(Error::Domain(format!(
                "velocity {u} maps outside the admissible region"
            )));
        }
        Ok(-3.0
            * self.c
            * st.rho
            * st.pi
            * translational.powf(self.s_star)
            * internal.powf(-2.0 * self.alpha_star))
    }

    /// `du/dξ = S(u) / (5P − 8Ju)`.
    pub fn slope(&self, u: f64) -> Result<f64> {
        let den = self.denominator(u);
        if den.abs() <= 1e-14 * 5.0 * self.fluxes.momentum {
            return Err(Error::Domain(format!(
                "reduced equation is singular at u = {u}"
            )));
        }
        Ok(self.source(u)? / den)
    }

    /// `dρ/dξ = −J/u² · du/dξ`.
    pub fn density_slope(&self, u: f64) -> Result<f64> {
        Ok(-self.fluxes.mass / (u * u) * self.slope(u)?)
    }

    /// `dξ/du`, the integrand of the profile coordinate.
    pub fn xi_rate(&self, u: f64) -> Result<f64> {
        let s = self.source(u)?;
        if s == 0.0 {
            return Err(Error::Domain(format!("equilibrium reached at u = {u}")));
        }
        Ok(self.denominator(u) / s)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

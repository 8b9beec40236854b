//! Rankine–Hugoniot states and the critical Mach number.

use super::ShockProblem;
use crate::error::{Error, Result};

/// Dimensionless state `(ρ, u, T, Π)` of the shock problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockState {
    pub rho: f64,
    pub u: f64,
    pub temperature: f64,
    pub pi: f64,
}

/// `c = (5+2α)/(7+2α)`, the pressure coefficient of the scaled equations.
pub fn sound_ratio(alpha: f64) -> f64 {
    (5.0 + 2.0 * alpha) / (7.0 + 2.0 * alpha)
}

/// `M0* = √((5/3)(5+2α)/(7+2α))`: above it the upstream flow outruns the
/// fastest characteristic and a sub-shock forms.
pub fn critical_mach(alpha: f64) -> f64 {
    (5.0 / 3.0 * sound_ratio(alpha)).sqrt()
}

/// Upstream and downstream equilibrium states.
pub fn rh_euler(problem: &ShockProblem) -> (ShockState, ShockState) {
    let (m, a) = (problem.mach0(), problem.alpha());
    let m2 = m * m;
    let upstream = ShockState {
        rho: 1.0,
        u: m,
        temperature: 1.0,
        pi: 0.0,
    };
    let downstream = ShockState {
        rho: 2.0 * (3.0 + a) * m2 / (5.0 + 2.0 * a + m2),
        u: (5.0 + 2.0 * a + m2) / (2.0 * (3.0 + a) * m),
        temperature: ((7.0 + 2.0 * a) * m2 * m2 + (34.0 + 24.0 * a + 4.0 * a * a) * m2
            - (5.0 + 2.0 * a))
            / (4.0 * (3.0 + a).powi(2) * m2),
        pi: 0.0,
    };
    (upstream, downstream)
}

/// State behind the sub-shock (non-trivial Rankine–Hugoniot solution of the
/// full system).
pub fn rh_full(problem: &ShockProblem) -> Result<ShockState> {
    let (m, a) = (problem.mach0(), problem.alpha());
    let critical = critical_mach(a);
    if m <= critical {
        return Err(Error::NoSubshock { mach0: m, critical });
    }
    Ok(full_jump_state(m, a))
}

/// The non-trivial jump formulas without the regime check. Below the
/// critical Mach number the result is not an admissible sub-shock; at the
/// critical Mach number it coincides with the upstream state.
pub fn full_jump_state(mach0: f64, alpha: f64) -> ShockState {
    let (m, a) = (mach0, alpha);
    let m2 = m * m;
    let (p5, p7) = (5.0 + 2.0 * a, 7.0 + 2.0 * a);
    ShockState {
        rho: 4.0 * m2 * p7 / (m2 * p7 + 5.0 * p5),
        u: 5.0 * p5 / (4.0 * m * p7) + m / 4.0,
        temperature: (9.0 * m2 * m2 * p7 * p7 + 2.0 * m2 * p5 * p7 * (37.0 + 16.0 * a)
            - 15.0 * p5 * p5)
            / (16.0 * m2 * p5 * p5 * p7),
        pi: (1.0 + a) * (3.0 * m2 * m2 * p7 * p7 - 2.0 * m2 * p5 * p7 - 5.0 * p5 * p5)
            / (2.0 * p5 * p5 * (m2 * p7 + 5.0 * p5)),
    }
}

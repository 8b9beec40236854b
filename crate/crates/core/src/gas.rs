//! Gas parameters, macroscopic state and equations of state.
//!
//! The internal-energy weight is `φ(I) = I^α`; everything here follows from
//! the caloric equation `ρe = (α + 5/2) p` and the thermal equation
//! `p = ρkT/m`.

use nalgebra::Vector3;

use crate::error::{require, Error, Result};

/// Molecular model: internal-degree exponent `α`, mass `m`, Boltzmann `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParameters {
    alpha: f64,
    mass: f64,
    boltzmann: f64,
}

impl GasParameters {
    pub fn new(alpha: f64, mass: f64, boltzmann: f64) -> Result<Self> {
        require(
            alpha.is_finite() && alpha > -1.0,
            "alpha",
            "exceed -1",
            alpha,
        )?;
        require(mass.is_finite() && mass > 0.0, "mass", "be positive", mass)?;
        require(
            boltzmann.is_finite() && boltzmann > 0.0,
            "boltzmann",
            "be positive",
            boltzmann,
        )?;
        Ok(Self {
            alpha,
            mass,
            boltzmann,
        })
    }

    /// Kinetic units, `m = k = 1`.
    pub fn kinetic(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, 1.0)
    }

    /// Build from the ratio of specific heats `γ ∈ (1, 5/3)`.
    pub fn from_gamma(gamma: f64, mass: f64, boltzmann: f64) -> Result<Self> {
        require(
            gamma.is_finite() && gamma > 1.0 && gamma < 5.0 / 3.0,
            "gamma",
            "lie in (1, 5/3)",
            gamma,
        )?;
        Self::new(alpha_from_gamma(gamma), mass, boltzmann)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    /// `α + 5/2`, the ratio `ρe / p`.
    pub fn energy_factor(&self) -> f64 {
        self.alpha + 2.5
    }

    /// Total number of degrees of freedom `D = 2(α+1) + 3`.
    pub fn degrees_of_freedom(&self) -> f64 {
        2.0 * (self.alpha + 1.0) + 3.0
    }

    /// Ratio of specific heats `γ = (D+2)/D`.
    pub fn gamma(&self) -> f64 {
        let d = self.degrees_of_freedom();
        (d + 2.0) / d
    }
}

/// Inverse of [`GasParameters::gamma`]: `α = (7 − 5γ) / (2(γ − 1))`.
pub fn alpha_from_gamma(gamma: f64) -> f64 {
    (7.0 - 5.0 * gamma) / (2.0 * (gamma - 1.0))
}

/// The six-field state `(ρ, u, e, Π)`.
///
/// `Σ p_ii` is derived on demand, never stored. Construction checks the open
/// admissibility interval `−p < Π < 2(α+1)p/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroState6 {
    rho: f64,
    velocity: Vector3<f64>,
    e: f64,
    pi: f64,
}

impl MacroState6 {
    pub fn new(
        rho: f64,
        velocity: Vector3<f64>,
        e: f64,
        pi: f64,
        params: &GasParameters,
    ) -> Result<Self> {
        require(rho.is_finite() && rho > 0.0, "rho", "be positive", rho)?;
        require(e.is_finite() && e > 0.0, "e", "be positive", e)?;
        if !velocity.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("velocity must be finite".into()));
        }
        require(pi.is_finite(), "Pi", "be finite", pi)?;
        let (lower, upper) = admissible_interval(rho, e, params);
        if !(pi > lower && pi < upper) {
            return Err(Error::Inadmissible { pi, lower, upper });
        }
        Ok(Self {
            rho,
            velocity,
            e,
            pi,
        })
    }

    /// Equilibrium state at rest (`u = 0`, `Π = 0`).
    pub fn equilibrium(rho: f64, e: f64, params: &GasParameters) -> Result<Self> {
        Self::new(rho, Vector3::zeros(), e, 0.0, params)
    }

    /// State at rest with prescribed dynamic pressure.
    pub fn at_rest(rho: f64, e: f64, pi: f64, params: &GasParameters) -> Result<Self> {
        Self::new(rho, Vector3::zeros(), e, pi, params)
    }

    /// Build from the pressure-tensor trace instead of `Π`.
    pub fn from_trace(
        rho: f64,
        velocity: Vector3<f64>,
        e: f64,
        trace: f64,
        params: &GasParameters,
    ) -> Result<Self> {
        require(e.is_finite() && e > 0.0, "e", "be positive", e)?;
        let p = rho * e / params.energy_factor();
        Self::new(rho, velocity, e, trace / 3.0 - p, params)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn velocity(&self) -> Vector3<f64> {
        self.velocity
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    /// Same `(ρ, u, e)` with a different dynamic pressure.
    pub fn with_pi(&self, pi: f64, params: &GasParameters) -> Result<Self> {
        Self::new(self.rho, self.velocity, self.e, pi, params)
    }

    /// Equilibrium pressure `p = ρe/(α + 5/2)`.
    pub fn pressure(&self, params: &GasParameters) -> f64 {
        self.rho * self.e / params.energy_factor()
    }

    /// Temperature `T = m e / (k (α + 5/2))`.
    pub fn temperature(&self, params: &GasParameters) -> f64 {
        params.mass() * self.e / (params.boltzmann() * params.energy_factor())
    }

    /// Trace of the pressure tensor, `Σ p_ii = 3(p + Π)`.
    pub fn trace(&self, params: &GasParameters) -> f64 {
        3.0 * (self.pressure(params) + self.pi)
    }

    /// `(p, Σ p_ii)`.
    pub fn trace_split(&self, params: &GasParameters) -> (f64, f64) {
        (self.pressure(params), self.trace(params))
    }

    /// Admissible open interval for `Π` at this `(ρ, e)`.
    pub fn admissible_interval(&self, params: &GasParameters) -> (f64, f64) {
        admissible_interval(self.rho, self.e, params)
    }
}

/// `(−p, 2(α+1)p/3)` for the given density and internal energy.
pub fn admissible_interval(rho: f64, e: f64, params: &GasParameters) -> (f64, f64) {
    let p = rho * e / params.energy_factor();
    (-p, 2.0 * (params.alpha() + 1.0) * p / 3.0)
}

/// `Π` from the trace at fixed `(ρ, e)`: `Π = Σp_ii/3 − p`.
pub fn pi_from_trace(rho: f64, e: f64, trace: f64, params: &GasParameters) -> f64 {
    trace / 3.0 - rho * e / params.energy_factor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pressure_and_temperature_in_kinetic_units() {
        let g = GasParameters::kinetic(0.5).unwrap();
        let s = MacroState6::equilibrium(1.0, 1.0, &g).unwrap();
        assert!((s.pressure(&g) - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.temperature(&g) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_energy_is_rejected() {
        let g = GasParameters::kinetic(0.5).unwrap();
        assert!(MacroState6::equilibrium(2.0, 0.0, &g).is_err());
    }

    #[test]
    fn alpha_bound_message() {
        let err = GasParameters::kinetic(-1.0).unwrap_err();
        assert!(err.to_string().starts_with("alpha must exceed -1"));
    }

    #[test]
    fn gamma_round_trip() {
        let g = GasParameters::from_gamma(4.0 / 3.0, 1.0, 1.0).unwrap();
        assert!((g.alpha() - 0.5).abs() < 1e-14);
        assert!((g.gamma() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn trace_split_example() {
        let g = GasParameters::kinetic(0.5).unwrap();
        let s = MacroState6::at_rest(1.0, 1.0, 0.1, &g).unwrap();
        let (p, tr) = s.trace_split(&g);
        assert!((tr - 1.3).abs() < 1e-14);
        assert!((pi_from_trace(1.0, 1.0, tr, &g) - 0.1).abs() < 1e-15);
        assert!((tr - 3.0 * p - 0.3).abs() < 1e-14);
        let eq = MacroState6::equilibrium(1.0, 1.0, &g).unwrap();
        assert_eq!(eq.trace(&g), 3.0 * eq.pressure(&g));
    }

    #[test]
    fn lower_boundary_is_open() {
        let g = GasParameters::kinetic(0.5).unwrap();
        let p = 1.0 / 3.0;
        assert!(MacroState6::at_rest(1.0, 1.0, -p * (1.0 - 1e-12), &g).is_ok());
        assert!(MacroState6::at_rest(1.0, 1.0, -p, &g).is_err());
        let upper = 2.0 * 1.5 * p / 3.0;
        assert!(MacroState6::at_rest(1.0, 1.0, upper, &g).is_err());
    }
}

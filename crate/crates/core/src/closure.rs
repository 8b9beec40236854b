//! Maximum-entropy closure: distribution functions, Lagrange multipliers,
//! entropy densities and the closed-form production terms.
//!
//! Notation used throughout (all derived from the state):
//!
//! ```text
//! θ  = Σp_ii/(3ρ) = e/(α+5/2) + Π/ρ              (velocity variance)
//! ε  = e − Σp_ii/(2ρ)                              (internal energy per mass)
//! ε' = ε/(α+1) = e/(α+5/2) − 3Π/(2(α+1)ρ)
//! f6 = C exp(−|c|²/(2θ) − (α+1) I/(mε))
//! ```
//!
//! Every function that takes fractional powers of `θ` or `ε'` rejects states
//! within a relative guard band of `1e-10·p` of the admissibility boundary.

use nalgebra::Vector3;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gas::{GasParameters, MacroState6};
use crate::kinematics::{CrossSection, CrossSectionVariant};
use crate::special::{ln_gamma, ln_gamma_signed};

/// Relative width of the rejected band next to the admissibility boundary.
pub const GUARD_BAND: f64 = 1e-10;

/// Reject states whose `Π` lies within `GUARD_BAND·p` of either boundary.
pub fn check_guard_band(state: &MacroState6, params: &GasParameters) -> Result<()> {
    let p = state.pressure(params);
    let (lower, upper) = state.admissible_interval(params);
    let band = GUARD_BAND * p;
    let pi = state.pi();
    if pi <= lower + band || pi >= upper - band {
        return Err(Error::GuardBand {
            pi,
            lower: lower + band,
            upper: upper - band,
        });
    }
    Ok(())
}

/// `f = exp(ln_norm − a|c|² − b I)`, the shape shared by `f5` and `f6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialForm {
    /// `ln C` of the normalisation constant.
    pub ln_norm: f64,
    /// Rate `a` of the velocity Gaussian.
    pub velocity_rate: f64,
    /// Rate `b` of the internal-energy exponential.
    pub internal_rate: f64,
}

impl ExponentialForm {
    fn build(rho: f64, theta: f64, eps: f64, params: &GasParameters) -> Self {
        let alpha = params.alpha();
        let m = params.mass();
        let a = 0.5 / theta;
        let b = (alpha + 1.0) / (m * eps);
        let ln_norm =
            (rho / m).ln() + 1.5 * (a / PI).ln() + (alpha + 1.0) * b.ln() - ln_gamma(alpha + 1.0);
        Self {
            ln_norm,
            velocity_rate: a,
            internal_rate: b,
        }
    }

    pub fn ln_density(&self, c: &Vector3<f64>, i: f64) -> f64 {
        self.ln_norm - self.velocity_rate * c.norm_squared() - self.internal_rate * i
    }

    pub fn density(&self, c: &Vector3<f64>, i: f64) -> f64 {
        self.ln_density(c, i).exp()
    }

    pub fn norm(&self) -> f64 {
        self.ln_norm.exp()
    }
}

/// Exponential form of the equilibrium distribution with the state's `(ρ, e)`.
pub fn equilibrium_form(state: &MacroState6, params: &GasParameters) -> ExponentialForm {
    let theta = state.e() / params.energy_factor();
    let eps = state.e() - 1.5 * theta;
    ExponentialForm::build(state.rho(), theta, eps, params)
}

/// Exponential form of the six-field maximiser.
pub fn maxent_form(state: &MacroState6, params: &GasParameters) -> Result<ExponentialForm> {
    check_guard_band(state, params)?;
    let theta = state.trace(params) / (3.0 * state.rho());
    let eps = state.e() - 1.5 * theta;
    Ok(ExponentialForm::build(state.rho(), theta, eps, params))
}

/// Equilibrium (five-field) distribution with the state's `ρ` and `e`,
/// evaluated at peculiar velocity `c` and internal energy `i`.
pub fn f5(state: &MacroState6, params: &GasParameters, c: &Vector3<f64>, i: f64) -> f64 {
    equilibrium_form(state, params).density(c, i)
}

/// Six-field maximum-entropy distribution.
pub fn f6(state: &MacroState6, params: &GasParameters, c: &Vector3<f64>, i: f64) -> Result<f64> {
    Ok(maxent_form(state, params)?.density(c, i))
}

/// `ln f6`, finite even where `f6` itself underflows.
pub fn ln_f6(state: &MacroState6, params: &GasParameters, c: &Vector3<f64>, i: f64) -> Result<f64> {
    Ok(maxent_form(state, params)?.ln_density(c, i))
}

/// Local Maxwellian with `ζ₀(T) = Γ(α+1)(kT)^{α+1}`.
pub fn local_maxwellian(
    rho: f64,
    temperature: f64,
    params: &GasParameters,
    c: &Vector3<f64>,
    i: f64,
) -> f64 {
    let (m, kt) = (params.mass(), params.boltzmann() * temperature);
    let ln_zeta = ln_gamma(params.alpha() + 1.0) + (params.alpha() + 1.0) * kt.ln();
    let ln = (rho / m).ln() + 1.5 * (m / (2.0 * PI * kt)).ln()
        - (0.5 * m * c.norm_squared() + i) / kt
        - ln_zeta;
    ln.exp()
}

/// Lagrange multipliers of the six-field problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureMultipliers {
    pub lambda0: f64,
    pub lambda1: Vector3<f64>,
    pub lambda2: f64,
    pub mu2: f64,
}

impl ClosureMultipliers {
    /// Rebuild the distribution
    /// `exp(−1 − (m/k)(λ0 + λ1·c + λ2|c|²) − (μ2/k)(m|c|²/2 + I))`.
    pub fn density(&self, params: &GasParameters, c: &Vector3<f64>, i: f64) -> f64 {
        let (m, k) = (params.mass(), params.boltzmann());
        let c2 = c.norm_squared();
        (-1.0
            - (m / k) * (self.lambda0 + self.lambda1.dot(c) + self.lambda2 * c2)
            - (self.mu2 / k) * (0.5 * m * c2 + i))
            .exp()
    }
}

pub fn multipliers(state: &MacroState6, params: &GasParameters) -> Result<ClosureMultipliers> {
    let form = maxent_form(state, params)?;
    let (m, k) = (params.mass(), params.boltzmann());
    let trace = state.trace(params);
    let eps = state.e() - trace / (2.0 * state.rho());
    let alpha = params.alpha();
    Ok(ClosureMultipliers {
        lambda0: -(k / m) * (1.0 + form.ln_norm),
        lambda1: Vector3::zeros(),
        lambda2: k / (2.0 * m) * (3.0 * state.rho() / trace - (alpha + 1.0) / eps),
        mu2: k * (alpha + 1.0) / (m * eps),
    })
}

/// Entropy densities of the equilibrium and six-field maximisers and their
/// difference `κ = h6 − h5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies {
    pub h5: f64,
    pub h6: f64,
    pub kappa: f64,
}

fn entropy_of(form: &ExponentialForm, rho: f64, params: &GasParameters) -> f64 {
    -params.boltzmann() * rho / params.mass() * (form.ln_norm - params.energy_factor())
}

pub fn entropies(state: &MacroState6, params: &GasParameters) -> Result<Entropies> {
    let h6 = entropy_of(&maxent_form(state, params)?, state.rho(), params);
    let h5 = entropy_of(&equilibrium_form(state, params), state.rho(), params);
    Ok(Entropies {
        h5,
        h6,
        kappa: kappa(state.rho(), state.e(), state.pi(), params)?,
    })
}

fn kappa_coefficients(rho: f64, e: f64, params: &GasParameters) -> (f64, f64) {
    let alpha = params.alpha();
    let c2 = params.energy_factor() / (rho * e);
    let c1 = 1.5 * c2 / (alpha + 1.0);
    (c1, c2)
}

/// Non-equilibrium entropy in physical variables,
/// `κ = k(ρ/m) ln[(1 − c₁Π)^{α+1} (1 + c₂Π)^{3/2}]`.
pub fn kappa(rho: f64, e: f64, pi: f64, params: &GasParameters) -> Result<f64> {
    let (c1, c2) = kappa_coefficients(rho, e, params);
    let (lo, hi) = (1.0 - c1 * pi, 1.0 + c2 * pi);
    if !(lo > 0.0 && hi > 0.0) {
        return Err(Error::Domain(format!(
            "kappa undefined at Pi = {pi}: outside the admissible interval"
        )));
    }
    Ok(params.boltzmann() * rho / params.mass()
        * ((params.alpha() + 1.0) * lo.ln() + 1.5 * hi.ln()))
}

/// `∂κ/∂Π` in closed form.
pub fn kappa_derivative(rho: f64, e: f64, pi: f64, params: &GasParameters) -> f64 {
    let (c1, c2) = kappa_coefficients(rho, e, params);
    params.boltzmann() * rho / params.mass()
        * (-(params.alpha() + 1.0) * c1 / (1.0 - c1 * pi) + 1.5 * c2 / (1.0 + c2 * pi))
}

/// `ln C(α, s)` of the standard-kernel production coefficient.
pub fn ln_coefficient_standard(alpha: f64, s: f64) -> f64 {
    0.5 * PI.ln() + (2.0 * s + 4.0) * 2f64.ln() - (s + 2.5).ln() - (s + 3.5).ln()
        + ln_gamma(s + 1.5)
        - 2.0 * ln_gamma(alpha + 1.0)
        + ((alpha + 2.5) / (alpha + 1.0)).ln()
}

/// `ln C_G(α, s, β, q)` of the generalized-kernel production coefficient.
pub fn ln_coefficient_generalized(alpha: f64, s: f64, beta: f64, q: f64) -> f64 {
    (2.0 * s + 4.0) * 2f64.ln()
        + ln_gamma(q + 1.5)
        + ln_gamma(s + 2.5)
        + ln_gamma(s + 1.5)
        + ln_gamma(beta + 2.0)
        + ln_gamma(beta + 3.0)
        - ln_gamma(s + beta + 4.5)
        - 2.0 * ln_gamma(alpha + 1.0)
        + ((alpha + 2.5) / (alpha + 1.0)).ln()
}

pub fn coefficient_standard(alpha: f64, s: f64) -> f64 {
    ln_coefficient_standard(alpha, s).exp()
}

pub fn coefficient_generalized(alpha: f64, s: f64, beta: f64, q: f64) -> f64 {
    ln_coefficient_generalized(alpha, s, beta, q).exp()
}

/// Exponent structure of a kernel: `(ln C, s + q, 2α − β, mass exponent)`.
struct ProductionShape {
    ln_coefficient: f64,
    theta_power: f64,
    eps_power: f64,
    mass_power: f64,
}

fn production_shape(spec: &CrossSection, params: &GasParameters) -> ProductionShape {
    let alpha = params.alpha();
    match spec.variant() {
        CrossSectionVariant::Standard => ProductionShape {
            ln_coefficient: ln_coefficient_standard(alpha, spec.s()),
            theta_power: spec.s(),
            eps_power: 2.0 * alpha,
            mass_power: 2.0 * alpha + 1.0,
        },
        CrossSectionVariant::Generalized => ProductionShape {
            ln_coefficient: ln_coefficient_generalized(alpha, spec.s(), spec.beta(), spec.q()),
            theta_power: spec.s() + spec.q(),
            eps_power: 2.0 * alpha - spec.beta(),
            mass_power: 2.0 * alpha - spec.beta() + 1.0,
        },
    }
}

/// Nonlinear production term `Σ Π_ii` in physical variables `(ρ, e, Π)`.
pub fn production(state: &MacroState6, spec: &CrossSection, params: &GasParameters) -> Result<f64> {
    check_guard_band(state, params)?;
    let shape = production_shape(spec, params);
    let (rho, e, pi) = (state.rho(), state.e(), state.pi());
    let alpha = params.alpha();
    let theta0 = e / params.energy_factor();
    let theta = theta0 + pi / rho;
    let eps_red = theta0 - 1.5 * pi / ((alpha + 1.0) * rho);
    let magnitude = (spec.k().ln() + 2.0 * rho.ln() - shape.mass_power * params.mass().ln()
        + shape.ln_coefficient
        + shape.theta_power * theta.ln()
        - shape.eps_power * eps_red.ln())
    .exp();
    Ok(-magnitude * pi / rho)
}

/// The same production term written through the trace `Σ p_ii`, as obtained
/// directly from the collision integral (before introducing `Π`).
pub fn production_trace_form(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
) -> Result<f64> {
    check_guard_band(state, params)?;
    let (rho, e) = (state.rho(), state.e());
    let (alpha, m) = (params.alpha(), params.mass());
    let trace = state.trace(params);
    let theta = trace / (3.0 * rho);
    let eps = e - trace / (2.0 * rho);
    let rate = (alpha + 1.0) / (m * eps);
    let bracket = -theta + eps / (alpha + 1.0);
    let s = spec.s();
    let (ln_pref, theta_power, rate_power) = match spec.variant() {
        CrossSectionVariant::Standard => (
            0.5 * PI.ln() + (2.0 * s + 6.0) * 2f64.ln() + ln_gamma(s + 1.5)
                - (2.0 * s + 5.0).ln()
                - (2.0 * s + 7.0).ln(),
            s,
            2.0 * alpha,
        ),
        CrossSectionVariant::Generalized => {
            let (beta, q) = (spec.beta(), spec.q());
            (
                (2.0 * s + 4.0) * 2f64.ln()
                    + ln_gamma(q + 1.5)
                    + ln_gamma(s + 2.5)
                    + ln_gamma(s + 1.5)
                    + ln_gamma(beta + 2.0)
                    + ln_gamma(beta + 3.0)
                    - ln_gamma(s + beta + 4.5),
                s + q,
                2.0 * alpha - beta,
            )
        }
    };
    let magnitude = (spec.k().ln() + 2.0 * rho.ln() - m.ln() + ln_pref + theta_power * theta.ln()
        - 2.0 * ln_gamma(alpha + 1.0)
        + rate_power * rate.ln())
    .exp();
    Ok(magnitude * bracket)
}

/// Relaxation time of the dynamic pressure, defined by `Σ Π_ii^lin = −3Π/τ_Π`.
pub fn relaxation_time(rho: f64, e: f64, spec: &CrossSection, params: &GasParameters) -> f64 {
    let shape = production_shape(spec, params);
    let theta0 = e / params.energy_factor();
    let ln_rate = spec.k().ln() + rho.ln() - shape.mass_power * params.mass().ln()
        + shape.ln_coefficient
        + (shape.theta_power - shape.eps_power) * theta0.ln();
    3.0 * (-ln_rate).exp()
}

/// Linearised production and the matching relaxation time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linearized {
    pub production: f64,
    pub tau_pi: f64,
}

pub fn production_linearized(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
) -> Result<Linearized> {
    check_guard_band(state, params)?;
    let tau_pi = relaxation_time(state.rho(), state.e(), spec, params);
    Ok(Linearized {
        production: -3.0 * state.pi() / tau_pi,
        tau_pi,
    })
}

/// Nonlinear extended-thermodynamics production
/// `−(3/τ_Π) Π / ((1 + c₂Π)(1 − c₁Π))`.
pub fn production_et(state: &MacroState6, tau_pi: f64, params: &GasParameters) -> Result<f64> {
    if !(tau_pi > 0.0 && tau_pi.is_finite()) {
        return Err(Error::Domain(format!(
            "tau_Pi must be positive, got {tau_pi}"
        )));
    }
    check_guard_band(state, params)?;
    let (c1, c2) = kappa_coefficients(state.rho(), state.e(), params);
    let pi = state.pi();
    Ok(-3.0 / tau_pi * pi / ((1.0 + c2 * pi) * (1.0 - c1 * pi)))
}

/// Phenomenological coefficient `ᾱ(ρ, e)` with `Σ Π_ii = ᾱ ∂κ/∂Π`, for a
/// given relaxation time.
pub fn et_coefficient(rho: f64, e: f64, tau_pi: f64, params: &GasParameters) -> f64 {
    let a = params.energy_factor();
    2.0 * params.mass() * (params.alpha() + 1.0) * rho * e * e
        / (tau_pi * params.boltzmann() * a * a * a)
}

/// `ᾱ(ρ, e)` written directly in the parameters of the ET-compatible kernel
/// (`β = 2α − 1`, `q = −(s+1)`).
pub fn et_coefficient_closed(rho: f64, k_g: f64, s: f64, params: &GasParameters) -> f64 {
    let alpha = params.alpha();
    let (ln_g, sign) = ln_gamma_signed(0.5 - s);
    let ln = (k_g / params.boltzmann()).ln() + 2.0 * rho.ln()
        - params.mass().ln()
        - 2.0 * ln_gamma(alpha + 1.0)
        + (2.0 * s + 5.0) * 2f64.ln()
        + ln_gamma(s + 2.5)
        + ln_gamma(s + 1.5)
        + ln_g
        + ln_gamma(2.0 * alpha + 1.0)
        + ln_gamma(2.0 * alpha + 2.0)
        - ln_gamma(s + 2.0 * alpha + 3.5);
    sign * ln.exp() / 3.0
}

/// Entropy production `D = ∫ Q(f6, f6) ln f6` for the generalized kernel
/// (the standard kernel is the case `β = q = 0`). Non-positive.
pub fn entropy_production(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
) -> Result<f64> {
    check_guard_band(state, params)?;
    let (rho, e) = (state.rho(), state.e());
    let (alpha, m) = (params.alpha(), params.mass());
    let (s, beta, q) = (spec.s(), spec.beta(), spec.q());
    let pi = state.pi();
    if pi == 0.0 {
        return Ok(0.0);
    }
    // (α+1)/ε − 3ρ/Σp = (θ − ε')/(θ ε') with θ − ε' = (Π/ρ)(α+5/2)/(α+1).
    let theta0 = e / params.energy_factor();
    let theta = theta0 + pi / rho;
    let eps_red = theta0 - 1.5 * pi / ((alpha + 1.0) * rho);
    let bracket = (pi / rho).abs() * params.energy_factor() / ((alpha + 1.0) * theta * eps_red);
    let ln = spec.k().ln() + 2.0 * rho.ln() - 3.0 * m.ln() - 2.0 * ln_gamma(alpha + 1.0)
        + (2.0 * s + 3.0) * 2f64.ln()
        + ln_gamma(q + 1.5)
        + ln_gamma(s + 2.5)
        + ln_gamma(s + 1.5)
        + ln_gamma(beta + 2.0)
        + ln_gamma(beta + 3.0)
        - ln_gamma(s + beta + 4.5)
        - (2.0 * alpha - 1.0 - beta) * (m * eps_red).ln()
        + (s + 1.0 + q) * theta.ln()
        + 2.0 * bracket.ln();
    Ok(-ln.exp())
}

/// All closure quantities of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureEval {
    pub h5: f64,
    pub h6: f64,
    pub kappa: f64,
    pub source: f64,
    pub tau_pi: f64,
    pub entropy_production: f64,
}

pub fn evaluate(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
) -> Result<ClosureEval> {
    let h = entropies(state, params)?;
    Ok(ClosureEval {
        h5: h.h5,
        h6: h.h6,
        kappa: h.kappa,
        source: production(state, spec, params)?,
        tau_pi: relaxation_time(state.rho(), state.e(), spec, params),
        entropy_production: entropy_production(state, spec, params)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas() -> GasParameters {
        GasParameters::kinetic(0.5).unwrap()
    }

    #[test]
    fn f5_reference_value() {
        let g = gas();
        let s = MacroState6::equilibrium(1.0, 1.0, &g).unwrap();
        let v = f5(&s, &g, &Vector3::zeros(), 0.0);
        assert!((v - 1.934_412_192_846_302_4).abs() < 1e-13 * v);
    }

    #[test]
    fn f6_reference_value() {
        let g = gas();
        let s = MacroState6::at_rest(1.0, 1.0, 0.1, &g).unwrap();
        let v = f6(&s, &g, &Vector3::zeros(), 0.0).unwrap();
        assert!((v - 2.228_368_098_605_246_2).abs() < 1e-12 * v);
    }

    #[test]
    fn kappa_reference_value() {
        let g = gas();
        let s = MacroState6::at_rest(1.0, 1.0, 0.1, &g).unwrap();
        let h = entropies(&s, &g).unwrap();
        assert!((h.kappa - (-0.141_466_019_206_862)).abs() < 1e-13);
        assert!((h.h6 - h.h5 - h.kappa).abs() < 1e-13);
        assert!((h.h5 - 2.340_196_495_974_444).abs() < 1e-13);
    }

    #[test]
    fn multiplier_example() {
        let g = gas();
        let s = MacroState6::at_rest(1.0, 1.0, 0.1, &g).unwrap();
        let mult = multipliers(&s, &g).unwrap();
        assert!((mult.mu2 - 1.5 / 0.35).abs() < 1e-13);
        assert_eq!(mult.lambda1, Vector3::zeros());
        let eq = MacroState6::equilibrium(1.0, 1.0, &g).unwrap();
        assert!(multipliers(&eq, &g).unwrap().lambda2.abs() < 1e-15);
    }

    #[test]
    fn standard_production_reference() {
        let g = gas();
        let s = MacroState6::at_rest(1.0, 1.0, 0.05, &g).unwrap();
        let spec = CrossSection::standard(1.0, 0.0).unwrap();
        let p = production(&s, &spec, &g).unwrap();
        assert!((p - (-1.290_756_302_521_008_4)).abs() < 1e-13);
        let tau = relaxation_time(1.0, 1.0, &spec, &g);
        assert!((tau - 0.136_718_75).abs() < 1e-14);
    }

    #[test]
    fn guard_band_rejects_boundary() {
        let g = gas();
        let p = 1.0 / 3.0;
        let upper = p;
        let s = MacroState6::at_rest(1.0, 1.0, upper * (1.0 - 1e-12), &g).unwrap();
        assert!(matches!(
            f6(&s, &g, &Vector3::zeros(), 0.0),
            Err(Error::GuardBand { .. })
        ));
    }
}

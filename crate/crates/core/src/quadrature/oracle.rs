//! Oracle integrals of the six-field distribution and of its collision
//! operator.
//!
//! The distribution is only ever evaluated through
//! [`ExponentialForm`](crate::closure::ExponentialForm), and post-collision
//! states come from [`collision_transform`]; nothing here uses the
//! closed-form moments, entropies or production terms.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::PI;

use super::adaptive::{adaptive_integrate, Domain};
use super::rules::{
    gauss_jacobi_unit, gauss_laguerre, gauss_legendre, gauss_legendre_unit, radial_rule, GaussRule,
};
use super::{Estimate, QuadSpec};
use crate::closure::{maxent_form, ExponentialForm};
use crate::error::{Error, Result};
use crate::gas::{GasParameters, MacroState6};
use crate::kinematics::{collision_transform, CollisionState, CrossSection, CrossSectionVariant};

/// Order of the internal-energy Laguerre rule (integrands are polynomial of
/// low degree in `I` once the exponential is absorbed).
const INTERNAL_ORDER: usize = 10;
/// Gauss order per radial panel.
const PANEL_ORDER: usize = 10;
/// Orders for the `R`, `I+I*`, `I/(I+I*)` and `r` dimensions of the
/// collision integral; the integrand is polynomial there once the endpoint
/// powers are absorbed in the weights.
const SHARE_ORDER: usize = 8;
const SUM_ORDER: usize = 8;
const SPLIT_ORDER: usize = 4;
/// Maximum refinement level of the tensor-product collision quadrature.
const MAX_LEVEL: u32 = 4;

/// Internal-energy rule rescaled to the distribution: `∫ I^α h(I) dI ≈ Σ w h(I)`,
/// with the `e^{−bI}` factor left inside `h`.
fn internal_rule(alpha: f64, rate: f64) -> GaussRule {
    let base = gauss_laguerre(INTERNAL_ORDER, alpha);
    let scale = rate.powf(-(alpha + 1.0));
    GaussRule {
        nodes: base.nodes.iter().map(|t| t / rate).collect(),
        weights: base
            .nodes
            .iter()
            .zip(&base.weights)
            .map(|(t, w)| w * scale * t.exp())
            .collect(),
    }
}

/// Velocity standard deviation of the Gaussian part of `form`.
fn velocity_sigma(form: &ExponentialForm) -> f64 {
    (0.5 / form.velocity_rate).sqrt()
}

/// Radial integral `∫_0^{Lσ} 4πc² Σ_j w_j h(c, I_j) dc` with adaptive control.
fn radial_integral<H>(
    form: &ExponentialForm,
    quad: &QuadSpec,
    internal: &GaussRule,
    h: H,
) -> Result<Estimate>
where
    H: Fn(f64, f64) -> f64,
{
    let cutoff = quad.radial_cutoff_sigmas * velocity_sigma(form);
    adaptive_integrate(
        |c: f64| 4.0 * PI * c * c * internal.iter().map(|(i, w)| w * h(c, i)).sum::<f64>(),
        Domain::Finite(0.0, cutoff),
        quad,
    )
}

/// Oracle values of the constraint moments `∫ (m, mc, m|c|², m|c|²/2 + I) f6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub rho: Estimate,
    pub momentum: Vector3<f64>,
    pub trace: Estimate,
    pub energy: Estimate,
}

pub fn integrate_moments(
    state: &MacroState6,
    params: &GasParameters,
    quad: &QuadSpec,
) -> Result<MomentEstimate> {
    quad.validate()?;
    let form = maxent_form(state, params)?;
    let m = params.mass();
    let internal = internal_rule(params.alpha(), form.internal_rate);
    let density = |c: f64, i: f64| form.density(&Vector3::new(0.0, 0.0, c), i);
    let rho = radial_integral(&form, quad, &internal, |c, i| m * density(c, i))?;
    let trace = radial_integral(&form, quad, &internal, |c, i| m * c * c * density(c, i))?;
    let energy = radial_integral(&form, quad, &internal, |c, i| {
        (0.5 * m * c * c + i) * density(c, i)
    })?;
    let cart = cartesian_moments(&form, params, quad, &internal);
    Ok(MomentEstimate {
        rho,
        momentum: cart.momentum,
        trace,
        energy,
    })
}

/// Oracle values of the non-convective fluxes of `f6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxMoments {
    pub momentum: Vector3<f64>,
    /// `p_ik = ∫ m c_i c_k f`.
    pub pressure: Matrix3<f64>,
    /// `Σ_i p_iik = ∫ m |c|² c_k f`.
    pub trace_flux: Vector3<f64>,
    /// `q_k = ∫ (m|c|²/2 + I) c_k f`.
    pub heat_flux: Vector3<f64>,
}

pub fn integrate_flux_moments(
    state: &MacroState6,
    params: &GasParameters,
    quad: &QuadSpec,
) -> Result<FluxMoments> {
    quad.validate()?;
    let form = maxent_form(state, params)?;
    let internal = internal_rule(params.alpha(), form.internal_rate);
    Ok(cartesian_moments(&form, params, quad, &internal))
}

/// Full three-dimensional tensor-product quadrature over `[−Lσ, Lσ]³` with
/// composite Gauss–Legendre panels of width `2σ`.
fn cartesian_moments(
    form: &ExponentialForm,
    params: &GasParameters,
    quad: &QuadSpec,
    internal: &GaussRule,
) -> FluxMoments {
    let m = params.mass();
    let sigma = velocity_sigma(form);
    let width = 2.0 * sigma;
    let half = (0.5 * quad.radial_cutoff_sigmas).ceil() as usize;
    let legendre = gauss_legendre(PANEL_ORDER);
    let mut axis = GaussRule {
        nodes: Vec::new(),
        weights: Vec::new(),
    };
    for k in 0..2 * half {
        let centre = (k as f64 - half as f64 + 0.5) * width;
        for (x, w) in legendre.iter() {
            axis.nodes.push(centre + 0.5 * width * x);
            axis.weights.push(0.5 * width * w);
        }
    }
    let n = axis.len();
    // One slab per x-node; slabs are reduced in index order.
    let slabs = quad.exec.map_range(n, |ix| {
        let mut acc = [0.0f64; 18];
        let (cx, wx) = (axis.nodes[ix], axis.weights[ix]);
        for (cy, wy) in axis.iter() {
            for (cz, wz) in axis.iter() {
                let c = Vector3::new(cx, cy, cz);
                let c2 = c.norm_squared();
                let (mut f0, mut fi) = (0.0, 0.0);
                for (i, wi) in internal.iter() {
                    let f = form.density(&c, i) * wi;
                    f0 += f;
                    fi += f * i;
                }
                let w = wx * wy * wz;
                let mass = w * m * f0;
                let energy = w * (0.5 * m * c2 * f0 + fi);
                for k in 0..3 {
                    acc[k] += mass * c[k];
                    for l in 0..3 {
                        acc[3 + 3 * k + l] += mass * c[k] * c[l];
                    }
                    acc[12 + k] += mass * c2 * c[k];
                    acc[15 + k] += energy * c[k];
                }
            }
        }
        acc
    });
    let mut total = [0.0f64; 18];
    for slab in &slabs {
        for (t, s) in total.iter_mut().zip(slab) {
            *t += s;
        }
    }
    FluxMoments {
        momentum: Vector3::new(total[0], total[1], total[2]),
        pressure: Matrix3::from_fn(|k, l| total[3 + 3 * k + l]),
        trace_flux: Vector3::new(total[12], total[13], total[14]),
        heat_flux: Vector3::new(total[15], total[16], total[17]),
    }
}

/// Test functions `ψ(c, I)` for the weak form of the collision operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    Mass,
    /// `m|c|²`, whose collision moment is the production `Σ Π_ii`.
    TraceMoment,
    /// `m|c|²/2 + I`, a collision invariant.
    Energy,
    /// `ln f6`, whose collision moment is the entropy production.
    LogDensity,
}

impl TestFunction {
    fn eval(self, form: &ExponentialForm, m: f64, c: &Vector3<f64>, i: f64) -> f64 {
        match self {
            TestFunction::Mass => m,
            TestFunction::TraceMoment => m * c.norm_squared(),
            TestFunction::Energy => 0.5 * m * c.norm_squared() + i,
            TestFunction::LogDensity => form.ln_density(c, i),
        }
    }
}

/// Weak form `∫ ψ Q(f6, f6) I^α dI dc` of the collision operator.
///
/// The integrand is taken before any analytic velocity integration:
/// `C² (ψ(c',I') − ψ(c,I)) e^{−a(|c|²+|c*|²) − b(I+I*)} 𝓑 (1−R) R^{1/2}` in the
/// variables `g = c − c*`, `G = (c + c*)/2`, `R`, `I + I*`, `I/(I+I*)`, `r`
/// and `ω`. For test functions quadratic in `c` the term linear in `G`
/// integrates to zero over the direction of `G`, so `ψ(c') − ψ(c)` is
/// evaluated at `G = 0` and the `|G|` integral factorises. The standard
/// kernel does not depend on `G`, and its Gaussian `G`-integral is applied
/// analytically.
pub fn collision_moment(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
    quad: &QuadSpec,
    psi: TestFunction,
) -> Result<Estimate> {
    quad.validate()?;
    let form = maxent_form(state, params)?;
    let max_level = {
        let mut level = 0;
        while level < MAX_LEVEL
            && quad.radial_cutoff_sigmas * f64::from(1u32 << (level + 1))
                <= quad.max_subdivisions as f64
        {
            level += 1;
        }
        level
    };
    let mut previous = collision_tensor_sum(&form, spec, params, quad, psi, 0)?;
    let mut last_error = f64::INFINITY;
    for level in 1..=max_level {
        let value = collision_tensor_sum(&form, spec, params, quad, psi, level)?;
        let error = (value - previous).abs();
        let required = (quad.rel_tol * value.abs()).max(quad.abs_floor);
        if error <= required {
            return Ok(Estimate { value, error });
        }
        previous = value;
        last_error = error;
    }
    Err(Error::Convergence {
        value: previous,
        error: last_error,
        required: (quad.rel_tol * previous.abs()).max(quad.abs_floor),
    })
}

fn collision_tensor_sum(
    form: &ExponentialForm,
    spec: &CrossSection,
    params: &GasParameters,
    quad: &QuadSpec,
    psi: TestFunction,
    level: u32,
) -> Result<f64> {
    let m = params.mass();
    let (a, b) = (form.velocity_rate, form.internal_rate);
    let (s, beta, q) = (spec.s(), spec.beta(), spec.q());
    let cutoff = quad.radial_cutoff_sigmas;

    // |g|: weight g^{2s+2} (with 4π), Gaussian e^{−a g²/2} evaluated explicitly.
    let g_rule = radial_rule(2.0 * s + 2.0, (1.0 / a).sqrt(), cutoff, level, PANEL_ORDER);
    // R: weight R^{s+1/2} (1−R)^{β+1}.
    let r_rule = gauss_jacobi_unit(SHARE_ORDER, beta + 1.0, s + 0.5);
    // S = I + I*: weight S^{β+1} e^{−bS}, rescaled S = t/b.
    let s_base = gauss_laguerre(SUM_ORDER, beta + 1.0);
    let s_scale = b.powf(-(beta + 2.0));
    let split_rule = gauss_legendre_unit(SPLIT_ORDER);

    // |G| factor.
    let g_factor = match spec.variant() {
        CrossSectionVariant::Standard => (PI / (2.0 * a)).powf(1.5),
        CrossSectionVariant::Generalized => {
            let rule = radial_rule(2.0 * q + 2.0, (0.25 / a).sqrt(), cutoff, level, PANEL_ORDER);
            4.0 * PI * rule.sum(|big_g| (-2.0 * a * big_g * big_g).exp())
        }
    };

    let omega = Vector3::new(0.7_f64.sin(), 0.0, 0.7_f64.cos());
    let partial = quad.exec.map_range(g_rule.len(), |ig| -> Result<f64> {
        let (g, wg) = (g_rule.nodes[ig], g_rule.weights[ig]);
        let c = Vector3::new(0.0, 0.0, 0.5 * g);
        let gauss_g = (-0.5 * a * g * g).exp();
        let mut acc = 0.0;
        for (share, w_share) in r_rule.iter() {
            for (t, w_t) in s_base.iter() {
                let sum = t / b;
                // e^{−bS} from the distributions times e^{t} from the rule weight.
                let internal_factor = (t - b * sum).exp();
                for (w_frac, w_w) in split_rule.iter() {
                    for (r, w_r) in split_rule.iter() {
                        let pre = CollisionState {
                            v: c,
                            v_star: -c,
                            i: w_frac * sum,
                            i_star: (1.0 - w_frac) * sum,
                            internal_share: r,
                            energy_share: share,
                            omega,
                        };
                        let post = collision_transform(&pre, params)?;
                        let delta =
                            psi.eval(form, m, &post.v, post.i) - psi.eval(form, m, &pre.v, pre.i);
                        acc += w_share * w_t * w_w * w_r * internal_factor * delta;
                    }
                }
            }
        }
        Ok(wg * gauss_g * acc)
    });
    let mut total = 0.0;
    for p in partial {
        total += p?;
    }
    // 4π for the direction of g and 4π for ω.
    let angular = 16.0 * PI * PI;
    Ok((2.0 * form.ln_norm).exp() * spec.k() * angular * g_factor * s_scale * total)
}

/// Oracle for the production term `Σ Π_ii = ∫ m|c|² Q(f6, f6)`.
pub fn integrate_production(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
    quad: &QuadSpec,
) -> Result<Estimate> {
    collision_moment(state, spec, params, quad, TestFunction::TraceMoment)
}

/// Oracle for the entropy production `D = ∫ Q(f6, f6) ln f6`.
pub fn integrate_entropy_production(
    state: &MacroState6,
    spec: &CrossSection,
    params: &GasParameters,
    quad: &QuadSpec,
) -> Result<Estimate> {
    collision_moment(state, spec, params, quad, TestFunction::LogDensity)
}

/// Oracle for the kinetic entropy `h = −k ∫ f6 ln f6 I^α dI dc`.
pub fn integrate_entropy(
    state: &MacroState6,
    params: &GasParameters,
    quad: &QuadSpec,
) -> Result<Estimate> {
    quad.validate()?;
    let form = maxent_form(state, params)?;
    let internal = internal_rule(params.alpha(), form.internal_rate);
    let k = params.boltzmann();
    let e = radial_integral(&form, quad, &internal, |c, i| {
        let ln = form.ln_density(&Vector3::new(0.0, 0.0, c), i);
        -k * ln.exp() * ln
    })?;
    Ok(e)
}

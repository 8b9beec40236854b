//! Profile assembly: continuous profiles, sub-shock profiles, normalization.

use std::cell::Cell;

use super::reduced::{Fluxes, ReducedSystem};
use super::rh::{critical_mach, rh_euler, rh_full, ShockState};
use super::ShockProblem;
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_integrate, Domain, QuadSpec};

/// One point of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub xi: f64,
    pub rho: f64,
    pub u: f64,
    pub temperature: f64,
    pub pi: f64,
}

impl ProfileSample {
    fn new(xi: f64, s: ShockState) -> Self {
        Self {
            xi,
            rho: s.rho,
            u: s.u,
            temperature: s.temperature,
            pi: s.pi,
        }
    }

    pub fn state(&self) -> ShockState {
        ShockState {
            rho: self.rho,
            u: self.u,
            temperature: self.temperature,
            pi: self.pi,
        }
    }
}

/// Discontinuity at the head of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subshock {
    pub xi: f64,
    pub upstream: ShockState,
    pub downstream: ShockState,
}

/// A computed shock profile with its metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ShockProfile {
    pub problem: ShockProblem,
    pub fluxes: Fluxes,
    /// Upstream equilibrium.
    pub upstream: ShockState,
    /// Downstream equilibrium.
    pub downstream: ShockState,
    /// Samples ordered by increasing `ξ`. A sub-shock profile starts with
    /// two frozen upstream rows, the second at the jump.
    pub samples: Vec<ProfileSample>,
    pub subshock: Option<Subshock>,
    /// Position at which the normalized density equals 1/2.
    pub midpoint_xi: f64,
    /// Inverse of the largest slope of the normalized density.
    pub thickness: f64,
    /// Largest `|Π|` along the profile.
    pub max_abs_pi: f64,
    continuous_start: usize,
    system: ReducedSystem,
}

impl ShockProfile {
    /// Samples of the smooth part (everything behind the jump, if any).
    pub fn continuous_part(&self) -> &[ProfileSample] {
        &self.samples[self.continuous_start..]
    }

    pub fn is_discontinuous(&self) -> bool {
        self.subshock.is_some()
    }

    pub fn system(&self) -> &ReducedSystem {
        &self.system
    }

    /// State at an arbitrary `ξ` on the smooth part, found by inverting
    /// `ξ(u)` between the bracketing samples.
    pub fn state_at(&self, xi: f64) -> Result<ShockState> {
        let part = self.continuous_part();
        let (first, last) = (part[0], part[part.len() - 1]);
        if xi <= first.xi {
            return Ok(if self.is_discontinuous() {
                self.upstream
            } else {
                first.state()
            });
        }
        if xi >= last.xi {
            return Ok(last.state());
        }
        let k = part.partition_point(|s| s.xi <= xi);
        let (lo, hi) = (part[k - 1], part[k]);
        let quad = QuadSpec::default().with_rel_tol(self.problem.controls.rel_tol);
        let xi_of =
            |u: f64| -> Result<f64> { Ok(lo.xi + integrate_xi(&self.system, lo.u, u, &quad)?) };
        // Safeguarded Newton on u ∈ [hi.u, lo.u]; ξ decreases in u.
        let (mut a, mut b) = (hi.u, lo.u);
        let mut u = lo.u + (hi.u - lo.u) * (xi - lo.xi) / (hi.xi - lo.xi);
        for _ in 0..60 {
            let f = xi_of(u)? - xi;
            if f > 0.0 {
                a = u;
            } else {
                b = u;
            }
            let step = f / self.system.xi_rate(u)?;
            let mut next = u - step;
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            if (next - u).abs() <= 4.0 * f64::EPSILON * u.abs() {
                u = next;
                break;
            }
            u = next;
        }
        Ok(self.system.recover(u))
    }
}

/// Normalized sample: `(φ − φ0)/(φ1 − φ0)` for `ρ, u, T`; `Π` unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedSample {
    pub xi: f64,
    pub rho: f64,
    pub u: f64,
    pub temperature: f64,
    pub pi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedProfile {
    pub samples: Vec<NormalizedSample>,
    /// Amount subtracted from the raw `ξ`.
    pub xi_origin: f64,
}

/// Map `ρ, u, T` onto `[0, 1]` between the equilibria and move the origin
/// of `ξ` to the density midpoint (smooth profiles) or to the jump.
pub fn normalize_profile(profile: &ShockProfile) -> NormalizedProfile {
    let (up, down) = (profile.upstream, profile.downstream);
    let scale = |v: f64, v0: f64, v1: f64| (v - v0) / (v1 - v0);
    let xi_origin = match profile.subshock {
        Some(jump) => jump.xi,
        None => profile.midpoint_xi,
    };
    let samples = profile
        .samples
        .iter()
        .map(|s| NormalizedSample {
            xi: s.xi - xi_origin,
            rho: scale(s.rho, up.rho, down.rho),
            u: scale(s.u, up.u, down.u),
            temperature: scale(s.temperature, up.temperature, down.temperature),
            pi: s.pi,
        })
        .collect();
    NormalizedProfile { samples, xi_origin }
}

/// Smooth profile; requires `M0` below the critical Mach number.
pub fn solve_continuous(problem: &ShockProblem) -> Result<ShockProfile> {
    problem.controls.validate()?;
    let m0 = problem.mach0();
    let critical = critical_mach(problem.alpha());
    if m0 >= critical - problem.controls.threshold_guard {
        return Err(Error::SonicSingularity {
            mach0: m0,
            critical,
        });
    }
    let system = ReducedSystem::new(problem);
    let (up, down) = rh_euler(problem);
    let eps = problem.controls.eps_eq;
    let u_start = launch(&system, &up, -1.0, m0 - down.u, eps)?;
    let u_end = launch(&system, &down, 1.0, m0 - down.u, eps)?;
    if system.denominator(u_start) <= 0.0 {
        return Err(Error::SonicSingularity {
            mach0: m0,
            critical,
        });
    }
    let branch = integrate_branch(&system, problem, u_start, u_end, 0.0)?;
    let mid_rho = 0.5 * (up.rho + down.rho);
    let midpoint_xi = xi_at_velocity(&system, problem, &branch, system.fluxes().mass / mid_rho)?;
    let (thickness, max_abs_pi) = shape_metrics(&system, &branch, down.rho - up.rho)?;
    Ok(ShockProfile {
        problem: *problem,
        fluxes: system.fluxes(),
        upstream: up,
        downstream: down,
        samples: branch,
        subshock: None,
        midpoint_xi,
        thickness,
        max_abs_pi,
        continuous_start: 0,
        system,
    })
}

/// Profile with a sub-shock at `ξ = 0`; requires `M0` above the critical
/// Mach number.
pub fn solve_subshock(problem: &ShockProblem) -> Result<ShockProfile> {
    problem.controls.validate()?;
    let m0 = problem.mach0();
    let critical = critical_mach(problem.alpha());
    if m0 <= critical + problem.controls.threshold_guard {
        return Err(Error::NoSubshock {
            mach0: m0,
            critical,
        });
    }
    let system = ReducedSystem::new(problem);
    let (up, down) = rh_euler(problem);
    let jump = rh_full(problem)?;
    if !(jump.u > down.u && jump.u < up.u) || system.denominator(jump.u) <= 0.0 {
        return Err(Error::DegenerateJump(
            "post-jump state does not connect to the downstream equilibrium",
        ));
    }
    let u_end = launch(&system, &down, 1.0, m0 - down.u, problem.controls.eps_eq)?;
    let branch = integrate_branch(&system, problem, jump.u, u_end, 0.0)?;
    let span = branch[branch.len() - 1].xi;
    let pad = (0.25 * span).max(1.0);
    let mut samples = Vec::with_capacity(branch.len() + 2);
    samples.push(ProfileSample::new(-pad, up));
    samples.push(ProfileSample::new(0.0, up));
    samples.extend_from_slice(&branch);
    let (thickness, max_abs_pi) = shape_metrics(&system, &branch, down.rho - up.rho)?;
    Ok(ShockProfile {
        problem: *problem,
        fluxes: system.fluxes(),
        upstream: up,
        downstream: down,
        samples,
        subshock: Some(Subshock {
            xi: 0.0,
            upstream: up,
            downstream: jump,
        }),
        midpoint_xi: 0.0,
        thickness,
        max_abs_pi,
        continuous_start: 2,
        system,
    })
}

/// Dispatch on the regime.
pub fn solve(problem: &ShockProblem) -> Result<ShockProfile> {
    if problem.mach0() < critical_mach(problem.alpha()) {
        solve_continuous(problem)
    } else {
        solve_subshock(problem)
    }
}

fn field_distance(a: &ShockState, b: &ShockState) -> f64 {
    (a.rho - b.rho)
        .abs()
        .max((a.u - b.u).abs())
        .max((a.temperature - b.temperature).abs())
        .max((a.pi - b.pi).abs())
}

/// Velocity a small step `δ` away from an equilibrium, with `δ` halved
/// until every field is within `eps/2` of it.
fn launch(
    system: &ReducedSystem,
    eq: &ShockState,
    direction: f64,
    range: f64,
    eps: f64,
) -> Result<f64> {
    let mut delta = 1e-6 * range;
    for _ in 0..60 {
        let u = eq.u + direction * delta;
        if field_distance(&system.recover(u), eq) <= 0.5 * eps {
            return Ok(u);
        }
        delta *= 0.5;
    }
    Err(Error::NonConvergence(
        "no launch point within the endpoint tolerance".into(),
    ))
}

/// `∫_{from}^{to} dξ/du du`.
fn integrate_xi(system: &ReducedSystem, from: f64, to: f64, quad: &QuadSpec) -> Result<f64> {
    let failure: Cell<Option<Error>> = Cell::new(None);
    let est = adaptive_integrate(
        |w| match system.xi_rate(w) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        Domain::Finite(from, to),
        quad,
    )?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(est.value)
}

/// Velocity grid between `u_start` and `u_end`, uniform in
/// `η = ln(u − u1) − ln(M0 − u)`; the spacing shrinks geometrically
/// towards the equilibria, where `ξ` is logarithmic in the distance.
fn velocity_grid(problem: &ShockProblem, u1: f64, u_start: f64, u_end: f64, n: usize) -> Vec<f64> {
    let m0 = problem.mach0();
    let eta = |u: f64| (u - u1).ln() - (m0 - u).ln();
    let (e0, e1) = (eta(u_start), eta(u_end));
    let mut grid: Vec<f64> = (0..n)
        .map(|i| {
            let t = e0 + (e1 - e0) * i as f64 / (n - 1) as f64;
            // Stable inverse of η for either sign.
            if t >= 0.0 {
                (m0 + u1 * (-t).exp()) / (1.0 + (-t).exp())
            } else {
                (u1 + m0 * t.exp()) / (1.0 + t.exp())
            }
        })
        .collect();
    grid[0] = u_start;
    grid[n - 1] = u_end;
    grid
}

fn integrate_branch(
    system: &ReducedSystem,
    problem: &ShockProblem,
    u_start: f64,
    u_end: f64,
    xi0: f64,
) -> Result<Vec<ProfileSample>> {
    let controls = problem.controls;
    let (_, down) = rh_euler(problem);
    let grid = velocity_grid(problem, down.u, u_start, u_end, controls.samples);
    let quad = QuadSpec::default().with_rel_tol(controls.rel_tol);
    let mut samples = Vec::with_capacity(grid.len());
    let mut xi = xi0;
    for (i, &u) in grid.iter().enumerate() {
        // ξ must increase as u decreases: dξ/du < 0 throughout.
        if !(system.xi_rate(u)? < 0.0) {
            return Err(Error::NonConvergence(format!(
                "profile is not monotone at u = {u}"
            )));
        }
        if i > 0 {
            xi += integrate_xi(system, grid[i - 1], u, &quad)?;
            if !(xi - xi0 <= controls.max_span) {
                return Err(Error::NonConvergence(format!(
                    "profile extent exceeds {}",
                    controls.max_span
                )));
            }
        }
        samples.push(ProfileSample::new(xi, system.recover(u)));
    }
    Ok(samples)
}

fn xi_at_velocity(
    system: &ReducedSystem,
    problem: &ShockProblem,
    branch: &[ProfileSample],
    u: f64,
) -> Result<f64> {
    // Branch velocities decrease with index.
    let k = branch
        .partition_point(|s| s.u > u)
        .clamp(1, branch.len() - 1);
    let quad = QuadSpec::default().with_rel_tol(problem.controls.rel_tol);
    let start = branch[k - 1];
    Ok(start.xi + integrate_xi(system, start.u, u, &quad)?)
}

/// Maximize `g` on `[a, b]` by golden-section search.
fn golden_max<G: Fn(f64) -> Result<f64>>(g: G, mut a: f64, mut b: f64) -> Result<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut g1, mut g2) = (g(x1)?, g(x2)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * (a.abs() + b.abs()) {
            break;
        }
        if g1 < g2 {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2)?;
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1)?;
        }
    }
    Ok(g1.max(g2))
}

/// Thickness `1/max|dρ_n/dξ|` and `max|Π|`, each refined around the best
/// sample.
fn shape_metrics(
    system: &ReducedSystem,
    branch: &[ProfileSample],
    rho_jump: f64,
) -> Result<(f64, f64)> {
    let refine = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, s) in branch.iter().enumerate() {
            let v = g(s.u)?;
            if v > best.1 {
                best = (i, v);
            }
        }
        let lo = branch[(best.0 + 1).min(branch.len() - 1)].u;
        let hi = branch[best.0.saturating_sub(1)].u;
        Ok(golden_max(g, lo, hi)?.max(best.1))
    };
    let slope = refine(&|u| Ok((system.density_slope(u)? / rho_jump).abs()))?;
    let max_pi = refine(&|u| Ok(system.recover(u).pi.abs()))?;
    Ok((1.0 / slope, max_pi))
}

//! Borgnakke–Larsen collision kinematics and collision cross sections.
//!
//! A binary collision is described by the pre-collision velocities `v, v*`,
//! internal energies `I, I*`, the repartition parameters `r, R ∈ [0,1]` and a
//! unit vector `ω`. With `g = v − v*` and total collision energy
//! `E = (m/4)|g|² + I + I*` the post-collision state is
//!
//! ```text
//! v'  = (v+v*)/2 + √(RE/m) T_ω[g/|g|]      I'  = r (1−R) E
//! v'* = (v+v*)/2 − √(RE/m) T_ω[g/|g|]      I'* = (1−r)(1−R) E
//! R'  = m|g|²/(4E)                          r'  = I/(I+I*)
//! ```
//!
//! where `T_ω y = y − 2(ω·y)ω` is the reflection through the plane normal to
//! `ω`. The map is an involution.

use nalgebra::Vector3;

use crate::error::{require, Error, Result};
use crate::gas::GasParameters;

const UNIT_TOLERANCE: f64 = 1e-12;

/// Microscopic pre- or post-collision tuple `(v, v*, I, I*, r, R, ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionState {
    pub v: Vector3<f64>,
    pub v_star: Vector3<f64>,
    pub i: f64,
    pub i_star: f64,
    /// `r`: split of the post-collision internal energy between the partners.
    pub internal_share: f64,
    /// `R`: fraction of the collision energy carried by relative motion.
    pub energy_share: f64,
    pub omega: Vector3<f64>,
}

impl CollisionState {
    pub fn new(
        v: Vector3<f64>,
        v_star: Vector3<f64>,
        i: f64,
        i_star: f64,
        internal_share: f64,
        energy_share: f64,
        omega: Vector3<f64>,
    ) -> Result<Self> {
        let state = Self {
            v,
            v_star,
            i,
            i_star,
            internal_share,
            energy_share,
            omega,
        };
        state.validate()?;
        Ok(state)
    }

    /// Check the tuple invariants (unit `ω`, non-negative energies, shares in `[0,1]`).
    pub fn validate(&self) -> Result<()> {
        if !self
            .v
            .iter()
            .chain(self.v_star.iter())
            .all(|x| x.is_finite())
        {
            return Err(Error::Domain("velocities must be finite".into()));
        }
        let norm = self.omega.norm();
        require(
            (norm - 1.0).abs() <= UNIT_TOLERANCE,
            "|omega|",
            "equal 1 within 1e-12",
            norm,
        )?;
        require(self.i >= 0.0, "I", "be non-negative", self.i)?;
        require(self.i_star >= 0.0, "I_star", "be non-negative", self.i_star)?;
        require(
            (0.0..=1.0).contains(&self.internal_share),
            "r",
            "lie in [0, 1]",
            self.internal_share,
        )?;
        require(
            (0.0..=1.0).contains(&self.energy_share),
            "R",
            "lie in [0, 1]",
            self.energy_share,
        )
    }

    pub fn relative_velocity(&self) -> Vector3<f64> {
        self.v - self.v_star
    }

    /// Total collision energy `E = (m/4)|g|² + I + I*` in the centre-of-mass frame.
    pub fn total_energy(&self, params: &GasParameters) -> f64 {
        0.25 * params.mass() * self.relative_velocity().norm_squared() + self.i + self.i_star
    }

    /// Lab-frame energy `(m/2)(|v|² + |v*|²) + I + I*`.
    pub fn lab_energy(&self, params: &GasParameters) -> f64 {
        0.5 * params.mass() * (self.v.norm_squared() + self.v_star.norm_squared())
            + self.i
            + self.i_star
    }

    /// The same collision with the partners exchanged (`r → 1 − r`).
    pub fn swapped(&self) -> Self {
        Self {
            v: self.v_star,
            v_star: self.v,
            i: self.i_star,
            i_star: self.i,
            internal_share: 1.0 - self.internal_share,
            energy_share: self.energy_share,
            omega: self.omega,
        }
    }
}

/// Reflection `T_ω y = y − 2(ω·y)ω`.
pub fn reflect(omega: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    y - 2.0 * omega.dot(y) * omega
}

/// Apply the Borgnakke–Larsen collision rules.
pub fn collision_transform(c: &CollisionState, params: &GasParameters) -> Result<CollisionState> {
    let m = params.mass();
    let g = c.relative_velocity();
    let g_norm = g.norm();
    let energy = c.total_energy(params);
    if !(energy > 0.0) {
        return Err(Error::DegenerateCollision("zero total collision energy"));
    }
    if g_norm == 0.0 {
        return Err(Error::DegenerateCollision(
            "zero relative velocity leaves the scattering direction undefined",
        ));
    }
    let internal = c.i + c.i_star;
    if internal == 0.0 {
        return Err(Error::DegenerateCollision(
            "zero internal energy leaves r' undefined",
        ));
    }
    let centre = 0.5 * (c.v + c.v_star);
    let half_gap = (c.energy_share * energy / m).sqrt() * reflect(&c.omega, &(g / g_norm));
    let post_internal = (1.0 - c.energy_share) * energy;
    Ok(CollisionState {
        v: centre + half_gap,
        v_star: centre - half_gap,
        i: c.internal_share * post_internal,
        i_star: (1.0 - c.internal_share) * post_internal,
        internal_share: c.i / internal,
        energy_share: m * g_norm * g_norm / (4.0 * energy),
        omega: c.omega,
    })
}

/// Jacobian `(1−R)/(1−R') · √(R/R')` of the collision map.
pub fn collision_jacobian(c: &CollisionState, params: &GasParameters) -> Result<f64> {
    let post = collision_transform(c, params)?;
    let (r0, r1) = (c.energy_share, post.energy_share);
    if !(r0 > 0.0 && r0 < 1.0 && r1 > 0.0 && r1 < 1.0) {
        return Err(Error::SingularJacobian {
            energy_share: r0,
            post_share: r1,
        });
    }
    Ok((1.0 - r0) / (1.0 - r1) * (r0 / r1).sqrt())
}

/// The equivalent velocity form `(1−R)/(1−R') · |g'|/|g|` of the Jacobian.
pub fn collision_jacobian_velocity_form(c: &CollisionState, params: &GasParameters) -> Result<f64> {
    let post = collision_transform(c, params)?;
    let (r0, r1) = (c.energy_share, post.energy_share);
    if !(r0 < 1.0 && r1 < 1.0) {
        return Err(Error::SingularJacobian {
            energy_share: r0,
            post_share: r1,
        });
    }
    Ok((1.0 - r0) / (1.0 - r1) * post.relative_velocity().norm() / c.relative_velocity().norm())
}

/// Momentum and energy change across the collision (post minus pre).
pub fn collision_invariant_residuals(
    c: &CollisionState,
    params: &GasParameters,
) -> Result<(Vector3<f64>, f64)> {
    let post = collision_transform(c, params)?;
    let m = params.mass();
    let momentum = m * (post.v + post.v_star) - m * (c.v + c.v_star);
    let energy = post.lab_energy(params) - c.lab_energy(params);
    Ok((momentum, energy))
}

/// Which collision kernel is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSectionVariant {
    /// `K R^s |g|^{2s}`.
    Standard,
    /// `K_G R^s |g|^{2s} (I+I*)^β (1−R)^β |G|^{2q}`.
    Generalized,
}

/// Cross-section model with validated exponents.
///
/// In the generalized kernel `G` is the average peculiar velocity
/// `((v−u) + (v*−u))/2` of the colliding pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSection {
    variant: CrossSectionVariant,
    k: f64,
    s: f64,
    beta: f64,
    q: f64,
}

impl CrossSection {
    pub fn standard(k: f64, s: f64) -> Result<Self> {
        require(k.is_finite() && k > 0.0, "K", "be positive", k)?;
        require(s.is_finite() && s > -1.5, "s", "exceed -3/2", s)?;
        Ok(Self {
            variant: CrossSectionVariant::Standard,
            k,
            s,
            beta: 0.0,
            q: 0.0,
        })
    }

    pub fn generalized(k: f64, s: f64, beta: f64, q: f64) -> Result<Self> {
        require(k.is_finite() && k > 0.0, "K_G", "be positive", k)?;
        require(s.is_finite() && s > -1.5, "s", "exceed -3/2", s)?;
        require(beta.is_finite() && beta > -2.0, "beta", "exceed -2", beta)?;
        require(q.is_finite() && q > -1.5, "q", "exceed -3/2", q)?;
        Ok(Self {
            variant: CrossSectionVariant::Generalized,
            k,
            s,
            beta,
            q,
        })
    }

    /// Generalized kernel with `β = 2α − 1`, `q = −(s+1)`, whose production
    /// term coincides with the extended-thermodynamics form.
    pub fn et_compatible(k: f64, s: f64, alpha: f64) -> Result<Self> {
        Self::generalized(k, s, 2.0 * alpha - 1.0, -(s + 1.0))
    }

    pub fn variant(&self) -> CrossSectionVariant {
        self.variant
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `β` (zero for the standard kernel).
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `q` (zero for the standard kernel).
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Exponents `(s*, α*) = (s + q, α − β/2)` of the dimensionless shock source.
    pub fn source_exponents(&self, alpha: f64) -> (f64, f64) {
        (self.s + self.q, alpha - 0.5 * self.beta)
    }
}

fn checked_pow(base: f64, exponent: f64, what: &'static str) -> Result<f64> {
    if exponent == 0.0 {
        return Ok(1.0);
    }
    if base == 0.0 && exponent < 0.0 {
        return Err(Error::SingularCrossSection(what));
    }
    Ok(base.powf(exponent))
}

/// Evaluate the cross section; `bulk` is the macroscopic velocity `u` used
/// for the peculiar velocities in the generalized kernel.
pub fn cross_section(spec: &CrossSection, c: &CollisionState, bulk: &Vector3<f64>) -> Result<f64> {
    let g2 = c.relative_velocity().norm_squared();
    let mut value = spec.k
        * checked_pow(
            c.energy_share * g2,
            spec.s,
            "zero relative kinetic energy with s < 0",
        )?;
    if spec.variant == CrossSectionVariant::Generalized {
        let internal = (c.i + c.i_star) * (1.0 - c.energy_share);
        value *= checked_pow(internal, spec.beta, "zero internal energy with beta < 0")?;
        let average = 0.5 * ((c.v - bulk) + (c.v_star - bulk));
        value *= checked_pow(
            average.norm_squared(),
            spec.q,
            "zero average peculiar velocity with q < 0",
        )?;
    }
    Ok(value)
}

/// Largest deviation of the cross section under the collision map and under
/// exchange of the partners.
pub fn microreversibility_residual(
    spec: &CrossSection,
    c: &CollisionState,
    bulk: &Vector3<f64>,
    params: &GasParameters,
) -> Result<f64> {
    let pre = cross_section(spec, c, bulk)?;
    let post = cross_section(spec, &collision_transform(c, params)?, bulk)?;
    let swapped = cross_section(spec, &c.swapped(), bulk)?;
    Ok((pre - post).abs().max((pre - swapped).abs()))
}

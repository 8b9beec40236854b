//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar parameter violates its admissible range.
    #[error("{name} must {requirement} (got {value})")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// Dynamic pressure outside the open interval `(-p, 2(α+1)p/3)`.
    #[error("inadmissible state: Pi = {pi} is outside ({lower}, {upper})")]
    Inadmissible { pi: f64, lower: f64, upper: f64 },

    /// State inside the relative guard band next to the admissibility boundary.
    #[error("state too close to the admissibility boundary: Pi = {pi}, admissible band ({lower}, {upper})")]
    GuardBand { pi: f64, lower: f64, upper: f64 },

    #[error("degenerate collision: {0}")]
    DegenerateCollision(&'static str),

    #[error("singular collision Jacobian (R = {energy_share}, R' = {post_share})")]
    SingularJacobian { energy_share: f64, post_share: f64 },

    #[error("singular cross section: {0}")]
    SingularCrossSection(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    /// Numerical integration did not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {value:e} with error {error:e}, required {required:e}")]
    Convergence {
        value: f64,
        error: f64,
        required: f64,
    },

    #[error("no sub-shock: M0 = {mach0} does not exceed the critical Mach number {critical}")]
    NoSubshock { mach0: f64, critical: f64 },

    #[error("sonic singularity: M0 = {mach0} is not below the critical Mach number {critical}")]
    SonicSingularity { mach0: f64, critical: f64 },

    #[error("shock integration did not converge: {0}")]
    NonConvergence(String),

    #[error("degenerate normalization: {0} has identical endpoint values")]
    DegenerateJump(&'static str),
}

/// Shorthand for the range checks used by constructors.
pub(crate) fn require(
    ok: bool,
    name: &'static str,
    requirement: &'static str,
    value: f64,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            requirement,
            value,
        })
    }
}

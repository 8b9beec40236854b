//! Gamma-function helpers.
//!
//! Values come from `statrs` (Lanczos approximation, ~1e-15 relative); the
//! wrappers only add the sign handling needed for negative arguments.

use statrs::function::gamma;

/// `Γ(x)` for any non-pole argument.
pub fn gamma(x: f64) -> f64 {
    gamma::gamma(x)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    gamma::ln_gamma(x)
}

/// `(ln|Γ(x)|, sign Γ(x))` valid for negative non-integer arguments as well.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (gamma::ln_gamma(x), 1.0);
    }
    // Reflection: Γ(x)Γ(1-x) = π / sin(πx).
    let s = (std::f64::consts::PI * x).sin();
    let ln = std::f64::consts::PI.ln() - s.abs().ln() - gamma::ln_gamma(1.0 - x);
    (ln, s.signum())
}

/// Regularised upper incomplete gamma `Q(a, x)`.
pub fn gamma_upper_regularized(a: f64, x: f64) -> f64 {
    gamma::gamma_ur(a, x)
}

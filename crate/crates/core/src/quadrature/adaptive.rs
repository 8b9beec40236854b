//! Globally adaptive Gauss–Kronrod (7/15) integration.

// Nodes and weights are quoted to the digits of the published tables.
#![allow(clippy::excessive_precision)]

use super::{Estimate, QuadSpec};
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite(f64, f64),
    /// `[a, ∞)`, mapped to `[0, 1)` by `x = a + t/(1−t)`.
    UpperInfinite(f64),
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kr = WGK[7] * fc;
    let mut ga = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kr += WGK[j] * pair;
        if j % 2 == 1 {
            ga += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kr * half,
        error: ((kr - ga) * half).abs(),
    }
}

fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, quad: &QuadSpec) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let mut panels = vec![kronrod(&f, a, b)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Domain(
                "integrand is not finite on the domain".into(),
            ));
        }
        let required = (quad.rel_tol * value.abs()).max(quad.abs_floor);
        if error <= required {
            return Ok(Estimate { value, error });
        }
        if panels.len() >= quad.max_subdivisions {
            return Err(Error::Convergence {
                value,
                error,
                required,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            return Err(Error::Convergence {
                value,
                error,
                required,
            });
        }
        panels.push(kronrod(&f, a, mid));
        panels.push(kronrod(&f, mid, b));
    }
}

/// Adaptive integration of `f` over `domain` to `quad.rel_tol` (or
/// `quad.abs_floor`, whichever is larger).
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: F,
    domain: Domain,
    quad: &QuadSpec,
) -> Result<Estimate> {
    match domain {
        Domain::Finite(a, b) if a <= b => integrate_finite(f, a, b, quad),
        Domain::Finite(a, b) => integrate_finite(f, b, a, quad).map(|e| Estimate {
            value: -e.value,
            error: e.error,
        }),
        Domain::UpperInfinite(a) => integrate_finite(
            |t: f64| {
                let one = 1.0 - t;
                f(a + t / one) / (one * one)
            },
            0.0,
            1.0,
            quad,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn gamma_identity() {
        let q = QuadSpec::default();
        let e = adaptive_integrate(
            |x: f64| x.powf(1.5) * (-x).exp(),
            Domain::UpperInfinite(0.0),
            &q,
        )
        .unwrap();
        assert!((e.value - gamma(2.5)).abs() < 1e-10 * gamma(2.5));
        assert!((gamma(2.5) - 1.329_340_388_179_137).abs() < 1e-14);
    }

    #[test]
    fn unit_interval() {
        let e =
            adaptive_integrate(|_| 1.0, Domain::Finite(0.0, 1.0), &QuadSpec::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian() {
        let e = adaptive_integrate(
            |x: f64| (-x * x).exp(),
            Domain::UpperInfinite(0.0),
            &QuadSpec::default(),
        )
        .unwrap();
        let exact = 0.5 * std::f64::consts::PI.sqrt();
        assert!((e.value - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn subdivision_limit_reports_convergence_error() {
        let q = QuadSpec {
            max_subdivisions: 2,
            ..QuadSpec::default()
        };
        let r = adaptive_integrate(
            |x: f64| (50.0 * x).sin().abs(),
            Domain::Finite(0.0, 3.0),
            &q,
        );
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}

//! Gauss rules from the Golub–Welsch eigenvalue method.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::special::ln_gamma;

/// Nodes and weights of an interpolatory quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Apply the rule to `f`.
    pub fn sum<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    fn append(&mut self, other: GaussRule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }

    fn affine(mut self, shift: f64, scale: f64) -> Self {
        for x in &mut self.nodes {
            *x = shift + scale * *x;
        }
        for w in &mut self.weights {
            *w *= scale;
        }
        self
    }
}

/// Rule from the recurrence coefficients of the monic orthogonal polynomials:
/// `diag[k]` are the `a_k`, `offdiag_sq[k]` the `b_{k+1}`, `mu0` the total mass.
fn golub_welsch(diag: &[f64], offdiag_sq: &[f64], mu0: f64) -> GaussRule {
    let n = diag.len();
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jacobi[(k, k)] = diag[k];
        if k + 1 < n {
            let b = offdiag_sq[k].sqrt();
            jacobi[(k, k + 1)] = b;
            jacobi[(k + 1, k)] = b;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> GaussRule {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k * k / (4.0 * k * k - 1.0)
        })
        .collect();
    golub_welsch(&diag, &off, 2.0)
}

/// Gauss–Legendre on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> GaussRule {
    gauss_legendre(n).affine(0.5, 0.5)
}

/// Gauss–Jacobi for the weight `(1−x)^a (1+x)^b` on `[−1, 1]`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> GaussRule {
    assert!(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
    let ab = a + b;
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let t = 2.0 * k as f64 + ab;
                (b * b - a * a) / (t * (t + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            let t = 2.0 * kf + ab;
            if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
            }
        })
        .collect();
    let ln_mu0 =
        (ab + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0);
    golub_welsch(&diag, &off, ln_mu0.exp())
}

/// Gauss–Jacobi on `[0, 1]` for the weight `(1−t)^a t^b`.
pub fn gauss_jacobi_unit(n: usize, a: f64, b: f64) -> GaussRule {
    let mut rule = gauss_jacobi(n, a, b).affine(0.5, 0.5);
    let scale = 2f64.powf(-(a + b));
    for w in &mut rule.weights {
        *w *= scale;
    }
    rule
}

/// Generalized Gauss–Laguerre for the weight `x^alpha e^{−x}` on `[0, ∞)`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> GaussRule {
    assert!(alpha > -1.0, "Laguerre exponent must exceed -1");
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64 * (k as f64 + alpha)).collect();
    golub_welsch(&diag, &off, ln_gamma(alpha + 1.0).exp())
}

/// Composite rule for `∫_0^{cutoff·σ} x^power h(x) dx` on a Gaussian scale `σ`.
///
/// Panels have width `σ/2^level`; the first panel carries the endpoint power
/// in a Gauss–Jacobi rule, the others use Gauss–Legendre with `x^power`
/// folded into the weights.
pub fn radial_rule(power: f64, sigma: f64, cutoff: f64, level: u32, order: usize) -> GaussRule {
    assert!(power > -1.0, "radial power must exceed -1");
    let width = sigma / f64::from(1u32 << level);
    let panels = (cutoff * sigma / width).ceil() as usize;
    let first = gauss_jacobi_unit(order, 0.0, power);
    let mut rule = GaussRule {
        nodes: first.nodes.iter().map(|t| t * width).collect(),
        weights: first
            .weights
            .iter()
            .map(|w| w * width.powf(power + 1.0))
            .collect(),
    };
    let legendre = gauss_legendre_unit(order);
    for k in 1..panels {
        let start = k as f64 * width;
        let mut panel = legendre.clone().affine(start, width);
        for (x, w) in panel.nodes.iter().zip(panel.weights.iter_mut()) {
            *w *= x.powf(power);
        }
        rule.append(panel);
    }
    rule
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(5);
        let v = r.sum(|x| x.powi(8) + x.powi(3));
        assert!((v - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        let (a, b) = (0.7, -0.4);
        let r = gauss_jacobi_unit(6, a, b);
        // ∫ (1−t)^a t^b t^2 dt = B(b+3, a+1)
        let exact = gamma(b + 3.0) * gamma(a + 1.0) / gamma(a + b + 4.0);
        assert!((r.sum(|t| t * t) - exact).abs() < 1e-14);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_laguerre(8, 1.5);
        let exact = gamma(4.5);
        assert!((r.sum(|x| x * x) - exact).abs() < 1e-13 * exact);
    }

    #[test]
    fn radial_rule_gaussian_moment() {
        // ∫_0^∞ x^{2.6} e^{−x²/2} dx = 2^{0.8} Γ(1.8)
        let r = radial_rule(2.6, 1.0, 12.0, 0, 10);
        let v = r.sum(|x| (-0.5 * x * x).exp());
        let exact = 2f64.powf(0.8) * gamma(1.8);
        assert!((v - exact).abs() < 1e-12 * exact);
    }
}

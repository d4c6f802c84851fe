//! Gauss-Jacobi quadrature by the Golub-Welsch eigenvalue method.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Result};
use crate::special::ln_gamma_signed;

/// Nodes and weights for `∫_{-1}^{1} (1-t)^α (1+t)^β f(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussJacobi {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussJacobi {
    pub fn new(m: usize, alpha: f64, beta: f64) -> Result<Self> {
        if m == 0 {
            return domain("quadrature needs at least one node");
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return domain(format!("Jacobi exponents ({alpha}, {beta}) must exceed -1"));
        }
        let ab = alpha + beta;
        let mut jm = DMatrix::<f64>::zeros(m, m);
        for k in 0..m {
            let kf = k as f64;
            jm[(k, k)] = if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
            };
            if k + 1 < m {
                let j = kf + 1.0;
                let s = 2.0 * j + ab;
                let b2 = if j == 1.0 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
                } else {
                    4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
                };
                jm[(k, k + 1)] = b2.sqrt();
                jm[(k + 1, k)] = b2.sqrt();
            }
        }
        let (lg_a, _) = ln_gamma_signed(alpha + 1.0);
        let (lg_b, _) = ln_gamma_signed(beta + 1.0);
        let (lg_ab, _) = ln_gamma_signed(ab + 2.0);
        let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + lg_a + lg_b - lg_ab).exp();
        let eig = SymmetricEigen::new(jm);
        let mut pairs: Vec<(f64, f64)> = (0..m)
            .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
            .collect();
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
        Ok(Self {
            alpha,
            beta,
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(t, w)| w * f(*t)).sum()
    }

    /// Nodes and weights for `∫_lo^hi (hi-y)^α (y-lo)^β f(y) dy`.
    pub fn on_interval(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (hi - lo);
        let scale = half.powf(self.alpha + self.beta + 1.0);
        let nodes = self.nodes.iter().map(|t| lo + half * (1.0 + t)).collect();
        let weights = self.weights.iter().map(|w| w * scale).collect();
        (nodes, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::beta::beta;

    #[test]
    fn legendre_nodes() {
        let g = GaussJacobi::new(2, 0.0, 0.0).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((g.nodes[0] + r).abs() < 1e-15 && (g.nodes[1] - r).abs() < 1e-15);
        assert!((g.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn integrates_beta_moments() {
        // ∫ (1-t)^α (1+t)^{β+k} = 2^{α+β+k+1} B(α+1, β+k+1)
        for (alpha, b) in [(-0.5, -0.5), (0.0, -0.25), (1.5, 0.5), (-0.4, 2.0)] {
            let g = GaussJacobi::new(12, alpha, b).unwrap();
            for k in 0..20 {
                let got = g.integrate(|t| (1.0 + t).powi(k));
                let want = 2f64.powf(alpha + b + k as f64 + 1.0) * beta(alpha + 1.0, b + k as f64 + 1.0);
                assert!((got / want - 1.0).abs() < 1e-12, "{alpha} {b} {k} {}", got / want - 1.0);
            }
        }
    }

    #[test]
    fn mapped_interval() {
        // ∫_1^3 (3-y)^{-1/2} (y-1)^{-1/2} dy = π
        let g = GaussJacobi::new(5, -0.5, -0.5).unwrap();
        let (_, w) = g.on_interval(1.0, 3.0);
        assert!((w.iter().sum::<f64>() - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(GaussJacobi::new(4, -1.0, 0.0).is_err());
        assert!(GaussJacobi::new(0, 0.0, 0.0).is_err());
    }
}

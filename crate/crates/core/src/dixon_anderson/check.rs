use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dixon_anderson::{da_gibbs_chain, da_integrate, GibbsConfig};
use crate::error::Result;
use crate::jack::{JackEngine, Partition};
use crate::stats::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenMode {
    Quadrature,
    Mc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenrelationResult {
    /// `(Λ J_λ)(x)`
    pub observed: f64,
    /// `c(λ, n, θ) J_λ(x)`
    pub target: f64,
    /// Relative error, or absolute when the target vanishes.
    pub error: f64,
    pub relative: bool,
    /// Quadrature error estimate or Monte Carlo standard error.
    pub uncertainty: f64,
}

impl EigenrelationResult {
    fn new(observed: f64, target: f64, uncertainty: f64) -> Self {
        let relative = target != 0.0;
        let scale = if relative { target.abs() } else { 1.0 };
        Self { observed, target, error: (observed - target).abs() / scale, relative, uncertainty: uncertainty / scale }
    }

    /// Error in units of the Monte Carlo standard error.
    pub fn z(&self) -> f64 {
        if self.uncertainty > 0.0 { self.error / self.uncertainty } else { f64::INFINITY }
    }
}

/// Compares `∫ λ(x, y) J_λ(y) dy` with `c(λ, n, θ) J_λ(x)`, where
/// `n = x.len() - 1`. `mc_samples` thinned Gibbs states are used in Monte
/// Carlo mode.
pub fn check_kernel_eigenrelation<R: Rng + ?Sized>(
    lambda: &Partition,
    x: &[f64],
    theta: f64,
    mode: EigenMode,
    tol: f64,
    mc_samples: usize,
    rng: &mut R,
) -> Result<EigenrelationResult> {
    let n = x.len().saturating_sub(1);
    let engine = JackEngine::new(theta)?;
    let j_n = engine.expand(lambda, n)?.to_poly();
    let j_x = engine.eval(lambda, x)?;
    let target = engine.kernel_eigenvalue(lambda, n) * j_x;
    match mode {
        EigenMode::Quadrature => {
            let q = da_integrate(x, |y| j_n.eval_f64(y), theta, tol)?;
            Ok(EigenrelationResult::new(q.value, target, q.error))
        }
        EigenMode::Mc => {
            let ys = da_gibbs_chain(x, theta, mc_samples, GibbsConfig::default(), rng)?;
            let v: Vec<f64> = ys.iter().map(|y| j_n.eval_f64(y)).collect();
            let e = Estimate::batch_means(&v, 50);
            Ok(EigenrelationResult::new(e.mean, target, e.std_error))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadrature_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = check_kernel_eigenrelation(&part![], &[0.1, 0.4, 2.0], 0.75, EigenMode::Quadrature, 1e-10, 0, &mut rng)
            .unwrap();
        assert!(r.error < 1e-9);
        let r = check_kernel_eigenrelation(&part![2, 1], &[0.2, 0.9, 1.7], 0.75, EigenMode::Quadrature, 1e-10, 0, &mut rng)
            .unwrap();
        assert!(r.error < 1e-6, "{r:?}");
    }

    #[test]
    fn mc_example() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = check_kernel_eigenrelation(&part![1], &[0.0, 1.0, 2.0], 1.0, EigenMode::Mc, 0.0, 4000, &mut rng)
            .unwrap();
        assert!((r.target - 2.0).abs() < 1e-12);
        assert!(r.z() < 3.0, "{r:?}");
    }
}

use serde_json::json;

use super::shift;
use crate::dixon_anderson::{check_kernel_eigenrelation, EigenMode};
use crate::harness::{inputs, Criterion, Item, ReportRecord, RunConfig};
use crate::jack::{kernel_eigenvalue, JackEngine, Partition};

const SUITE: &str = "kernel";

/// A fixed, unevenly spaced `x` in `(0, 1)` with `n + 1` coordinates.
pub(crate) fn kernel_point(n: usize) -> Vec<f64> {
    (1..=n + 1).map(|i| (i as f64 / (n + 2) as f64).powf(1.2)).collect()
}

pub(crate) fn items(config: &RunConfig) -> Vec<Item<'_>> {
    let k = &config.kernel;
    let delta = shift(config, config.controls.algebraic);
    let tol = config.tolerances.kernel;
    let mut items = Vec::new();
    for &theta in &k.theta {
        for &n in &k.n {
            let x = kernel_point(n);
            for lam in Partition::up_to_weight(k.weight_cap, n) {
                // the empty partition has c = 1 at every θ; it is the stochasticity check
                let check = if lam.is_empty() { "kernel.stochastic" } else { "kernel.eigenrelation" };
                if lam.is_empty() && config.control {
                    continue;
                }
                let inp = inputs(json!({"theta": theta, "n": n, "lambda": lam.to_string(), "x": x, "control_shift": delta}));
                let echo = inp.clone();
                let x = x.clone();
                items.push(Item::new(check, inp, move |rng| {
                    let r = check_kernel_eigenrelation(&lam, &x, theta, EigenMode::Quadrature, k.quad_tol, 0, rng)?;
                    let target = shifted_target(&lam, &x, theta, delta)?;
                    Ok(vec![ReportRecord::new(SUITE, check, echo.clone(), r.observed, target, Criterion::Relative {
                        tolerance: tol,
                    })])
                }));
            }
        }
    }
    if k.mc_samples > 0 {
        let n = k.mc_n;
        let theta = k.mc_theta;
        let x = kernel_point(n);
        for lam in Partition::up_to_weight(2, n).into_iter().filter(|l| !l.is_empty()) {
            let inp = inputs(json!({
                "theta": theta, "n": n, "lambda": lam.to_string(), "x": x,
                "samples": k.mc_samples, "control_shift": delta,
            }));
            let echo = inp.clone();
            let x = x.clone();
            let sigma = config.tolerances.sigma;
            items.push(Item::new("kernel.mc", inp, move |rng| {
                let r = check_kernel_eigenrelation(&lam, &x, theta, EigenMode::Mc, 0.0, k.mc_samples, rng)?;
                let target = shifted_target(&lam, &x, theta, delta)?;
                let se = r.uncertainty * r.target.abs();
                Ok(vec![ReportRecord::new(SUITE, "kernel.mc", echo.clone(), r.observed, target, Criterion::Sigma {
                    sigma,
                    std_error: se,
                })])
            }));
        }
    }
    items
}

/// `c(λ, n, θ) J_λ((1 + δ)x)`. A θ shift would be invisible on column
/// partitions, where both factors are θ-free.
fn shifted_target(lam: &Partition, x: &[f64], theta: f64, delta: f64) -> crate::Result<f64> {
    let engine = JackEngine::new(theta)?;
    let moved: Vec<f64> = x.iter().map(|v| v * (1.0 + delta)).collect();
    Ok(kernel_eigenvalue(lam, x.len() - 1, &theta) * engine.eval(lam, &moved)?)
}

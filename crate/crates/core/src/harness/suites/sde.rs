use rand::Rng;
use serde_json::json;

use super::shift;
use crate::algebra::{exact_moment, ModelParams, Shape};
use crate::diffusion::{check_norm_process, mc_moment, simulate, SimConfig};
use crate::error::Result;
use crate::harness::{inputs, Criterion, Item, ReportRecord, RunConfig};
use crate::jack::{JackEngine, Partition};
use crate::stats::Estimate;

const SUITE: &str = "sde";

fn sim(config: &RunConfig, dt: f64, paths: usize, seed: u64) -> SimConfig {
    SimConfig { dt, gap_safety: config.sde.gap_safety, paths, seed, ..SimConfig::default() }
}

/// Bias runs halve the whole step rule. On the Jacobi side the gap bound
/// binds long before `dt` does, so halving `dt` alone changes little.
fn bias_sim(config: &RunConfig, halvings: i32, seed: u64) -> SimConfig {
    let s = &config.sde;
    let f = 0.5f64.powi(halvings);
    SimConfig { dt: s.bias_dt * f, gap_safety: s.bias_gap_safety * f, paths: s.bias_paths, seed, ..SimConfig::default() }
}

/// The two processes of the moment and bias checks with their start points.
pub(crate) fn moment_cases() -> [(ModelParams<f64>, Vec<f64>); 2] {
    [
        (ModelParams::laguerre(2, 1.0, 3.0), vec![0.5, 1.5]),
        (ModelParams::jacobi(2, 1.0, 2.0, 2.0), vec![0.3, 0.6]),
    ]
}

fn shifted(p: &ModelParams<f64>, delta: f64) -> ModelParams<f64> {
    let mut q = p.clone();
    q.shape = match p.shape {
        Shape::Laguerre { d } => Shape::Laguerre { d: d + delta },
        Shape::Jacobi { a, b } => Shape::Jacobi { a: a + delta, b },
    };
    q
}

fn params_json(p: &ModelParams<f64>) -> serde_json::Value {
    match p.shape {
        Shape::Laguerre { d } => json!({"family": "laguerre", "n": p.n, "theta": p.theta, "d": d}),
        Shape::Jacobi { a, b } => json!({"family": "jacobi", "n": p.n, "theta": p.theta, "a": a, "b": b}),
    }
}

/// Monte Carlo mean of `J_λ(X(t))` from `x0`.
fn jack_mean(lam: &Partition, p: &ModelParams<f64>, x0: &[f64], t: f64, sim: &SimConfig) -> Result<Estimate> {
    let j = JackEngine::new(p.theta)?.expand(lam, p.n)?.to_poly();
    let ends = simulate(x0, p, t, sim)?;
    Ok(mc_moment(&ends, |x| j.eval_f64(x)))
}

pub(crate) fn items(config: &RunConfig) -> Vec<Item<'_>> {
    let s = &config.sde;
    let sigma = config.tolerances.sigma;
    let delta = shift(config, config.controls.sde);
    let mut items = Vec::new();
    for &n in &s.norm_n {
        for &[beta, d] in &s.norm_beta_d {
            for &t in &s.norm_t {
                let p = ModelParams::laguerre(n, beta / 2.0, d);
                let x0: Vec<f64> = (1..=n).map(|i| 0.5 * i as f64).collect();
                let inp = inputs(json!({
                    "process": params_json(&p), "x0": x0, "t": t, "paths": s.paths, "dt": s.dt, "control_shift": delta,
                }));
                let echo = inp.clone();
                items.push(Item::new("step2.norm", inp, move |rng| {
                    let r = check_norm_process(&p, &x0, t, &sim(config, s.dt, s.paths, rng.gen()))?;
                    let nn = n as f64;
                    let dim = beta * ((d + delta) * nn / 2.0 + nn * (nn - 1.0));
                    let target = x0.iter().sum::<f64>() + dim * t;
                    let e = r.mean.estimate;
                    Ok(vec![ReportRecord::new(SUITE, "step2.norm", echo.clone(), e.mean, target, Criterion::Sigma {
                        sigma,
                        std_error: e.std_error,
                    })])
                }));
            }
        }
    }
    for (p, x0) in moment_cases() {
        for parts in &s.moment_lambda {
            let lam = Partition::new(parts.clone()).expect("validated");
            let inp = inputs(json!({
                "process": params_json(&p), "x0": x0, "lambda": lam.to_string(), "t": s.moment_t,
                "paths": s.paths, "dt": s.dt, "control_shift": delta,
            }));
            let echo = inp.clone();
            let (p2, x02, lam2) = (p.clone(), x0.clone(), lam.clone());
            items.push(Item::new("sde.exact-moment", inp, move |rng| {
                let (p, x0) = (&p2, &x02);
                let e = jack_mean(&lam2, p, x0, s.moment_t, &sim(config, s.dt, s.paths, rng.gen()))?;
                let target = exact_moment(x0, &lam2, &shifted(p, delta), &s.moment_t)?;
                Ok(vec![ReportRecord::new(SUITE, "sde.exact-moment", echo.clone(), e.mean, target, Criterion::Sigma {
                    sigma,
                    std_error: e.std_error,
                })])
            }));
        }
    }
    if config.control {
        return items;
    }
    // Laguerre J_(2) is too heavy-tailed at coarse steps and Jacobi J_(1)
    // too flat for a two-point comparison at this path count.
    let [lag, jac] = moment_cases();
    for ((p, x0), lam) in [(lag, crate::part![1]), (jac, crate::part![2])] {
        let inp = inputs(json!({
            "process": params_json(&p), "x0": x0, "lambda": lam.to_string(), "t": s.bias_t,
            "paths": s.bias_paths, "dt": [s.bias_dt, s.bias_dt / 2.0],
            "gap_safety": [s.bias_gap_safety, s.bias_gap_safety / 2.0],
        }));
        let echo = inp.clone();
        items.push(Item::new("sde.bias", inp, move |rng| {
            let target = exact_moment(&x0, &lam, &p, &s.bias_t)?;
            let coarse = jack_mean(&lam, &p, &x0, s.bias_t, &bias_sim(config, 0, rng.gen()))?;
            let fine = jack_mean(&lam, &p, &x0, s.bias_t, &bias_sim(config, 1, rng.gen()))?;
            let (ec, ef) = ((coarse.mean - target).abs(), (fine.mean - target).abs());
            Ok(vec![ReportRecord::new(SUITE, "sde.bias", echo.clone(), ef, ec, Criterion::Shrinks {
                sigma,
                std_error: coarse.std_error,
            })])
        }));
    }
    items
}

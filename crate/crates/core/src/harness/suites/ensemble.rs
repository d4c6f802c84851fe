use rand::Rng;
use serde_json::json;

use super::shift;
use crate::diffusion::{simulate_from, SimConfig};
use crate::ensemble::{
    chain_estimate, check_corollary, ensemble_mcmc, CorollaryBudget, CorollaryMode, EnsembleSpec, McmcConfig, TestPoly,
};
use crate::error::Result;
use crate::harness::{inputs, Criterion, Inputs, Item, ReportRecord, RunConfig};
use crate::jack::Partition;
use crate::stats::Estimate;

const SUITE: &str = "ensemble";

fn spec([a, b, beta]: [f64; 3], n: usize) -> Result<EnsembleSpec> {
    EnsembleSpec::new(n, a, b, beta)
}

fn with_a(s: &EnsembleSpec, delta: f64) -> EnsembleSpec {
    EnsembleSpec { a: s.a + delta, ..*s }
}

fn jack_polys(n: usize, theta: f64, cap: u32) -> Result<Vec<TestPoly>> {
    Partition::up_to_weight(cap, n)
        .into_iter()
        .filter(|l| !l.is_empty())
        .map(|l| TestPoly::jack(&l, n, theta))
        .collect()
}

fn combined(a: &Estimate, b: &Estimate) -> f64 {
    a.std_error.hypot(b.std_error)
}

fn tag(echo: &Inputs, key: &str, v: impl serde::Serialize) -> Inputs {
    let mut m = echo.clone();
    m.insert(key.into(), json!(v));
    m
}

/// `E[x^k]` under `Beta(α, β)`.
pub(crate) fn beta_moment(alpha: f64, beta: f64, k: u32) -> f64 {
    (0..k).map(|j| (alpha + j as f64) / (alpha + beta + j as f64)).product()
}

pub(crate) fn items(config: &RunConfig) -> Vec<Item<'_>> {
    let e = &config.ensemble;
    let sigma = config.tolerances.sigma;
    let quad_delta = shift(config, config.controls.algebraic);
    let mc_delta = shift(config, config.controls.ensemble_mc);
    let mcmc = McmcConfig::default();
    let mut items = Vec::new();

    for &abb in &e.quadrature {
        let inp = inputs(json!({"a": abb[0], "b": abb[1], "beta": abb[2], "n": 1, "control_shift": quad_delta}));
        let echo = inp.clone();
        let tol = config.tolerances.corollary_quadrature;
        items.push(Item::new("corollary.quadrature", inp, move |rng| {
            let s = spec(abb, 1)?;
            let polys = (1..=e.max_degree)
                .map(|k| TestPoly::monomial(&Partition::new(vec![k])?, 1))
                .collect::<Result<Vec<_>>>()?;
            let budget = CorollaryBudget { quad_tol: e.quad_tol, ..CorollaryBudget::default() };
            let rows =
                check_corollary(&s, &with_a(&s.lifted(), quad_delta), &polys, CorollaryMode::Quadrature, &budget, rng)?;
            Ok(rows
                .into_iter()
                .map(|r| {
                    ReportRecord::new(SUITE, "corollary.quadrature", tag(&echo, "poly", &r.label), r.lhs.mean, r.rhs.mean, Criterion::Absolute {
                        tolerance: tol,
                    })
                })
                .collect())
        }));
    }

    let [n, a, b, beta] = e.mc;
    let inp = inputs(json!({"n": n, "a": a, "b": b, "beta": beta, "samples": e.samples, "control_shift": mc_delta}));
    let echo = inp.clone();
    items.push(Item::new("corollary.mc", inp, move |rng| {
        let s = spec([a, b, beta], n as usize)?;
        let polys = jack_polys(s.n, s.theta(), 2)?;
        let budget = CorollaryBudget { samples: e.samples, mcmc, ..CorollaryBudget::default() };
        let rows = check_corollary(&s, &with_a(&s.lifted(), mc_delta), &polys, CorollaryMode::Mc, &budget, rng)?;
        Ok(rows
            .into_iter()
            .map(|r| {
                ReportRecord::new(SUITE, "corollary.mc", tag(&echo, "poly", &r.label), r.lhs.mean, r.rhs.mean, Criterion::Sigma {
                    sigma,
                    std_error: combined(&r.lhs, &r.rhs),
                })
            })
            .collect())
    }));

    for (n, abb) in [(1usize, e.one_particle), (2, e.two_particle)] {
        for &t in &e.stationarity_t {
            let inp = inputs(json!({
                "n": n, "a": abb[0], "b": abb[1], "beta": abb[2], "t": t,
                "paths": e.stationarity_paths, "dt": config.sde.dt, "control_shift": mc_delta,
            }));
            let echo = inp.clone();
            items.push(Item::new("ensemble.stationarity", inp, move |rng| {
                let s = spec(abb, n)?;
                let polys = if n == 1 {
                    (1..=2).map(|k| TestPoly::monomial(&Partition::new(vec![k])?, 1)).collect::<Result<Vec<_>>>()?
                } else {
                    Partition::up_to_weight(2, 1)
                        .into_iter()
                        .skip(1)
                        .map(|l| TestPoly::jack(&l, n, s.theta()))
                        .collect::<Result<Vec<_>>>()?
                };
                let starts = ensemble_mcmc(&s, e.stationarity_paths, &mcmc, rng)?.samples;
                let sim = SimConfig {
                    dt: config.sde.dt,
                    gap_safety: config.sde.gap_safety,
                    paths: e.stationarity_paths,
                    seed: rng.gen(),
                    ..SimConfig::default()
                };
                let ends = simulate_from(|k| starts[k].clone(), &s.process(), t, &sim)?;
                let reference = ensemble_mcmc(&with_a(&s, mc_delta), e.stationarity_paths, &mcmc, rng)?.samples;
                Ok(polys
                    .iter()
                    .map(|p| {
                        let sde = chain_estimate(&ends, |x| p.eval(x));
                        let ens = chain_estimate(&reference, |x| p.eval(x));
                        ReportRecord::new(SUITE, "ensemble.stationarity", tag(&echo, "poly", &p.label), sde.mean, ens.mean, Criterion::Sigma {
                            sigma,
                            std_error: combined(&sde, &ens),
                        })
                    })
                    .collect())
            }));
        }
    }

    let abb = e.one_particle;
    let inp = inputs(json!({"n": 1, "a": abb[0], "b": abb[1], "beta": abb[2], "samples": e.samples, "control_shift": mc_delta}));
    let echo = inp.clone();
    items.push(Item::new("ensemble.beta-moments", inp, move |rng| {
        let s = spec(abb, 1)?;
        let run = ensemble_mcmc(&s, e.samples, &mcmc, rng)?;
        let (alpha, beta) = (s.beta * (s.a + mc_delta) / 2.0, s.beta * s.b / 2.0);
        Ok((1..=4)
            .map(|k| {
                let est = chain_estimate(&run.samples, |x| x[0].powi(k as i32));
                let mut r = ReportRecord::new(SUITE, "ensemble.beta-moments", tag(&echo, "k", k), est.mean, beta_moment(alpha, beta, k), Criterion::Sigma {
                    sigma,
                    std_error: est.std_error,
                });
                r.warning = run.warning.clone();
                r
            })
            .collect())
    }));

    let abb = e.two_particle;
    if abb[0] == abb[1] && !config.control {
        let inp = inputs(json!({"n": 2, "a": abb[0], "b": abb[1], "beta": abb[2], "samples": e.samples}));
        let echo = inp.clone();
        items.push(Item::new("ensemble.reflection", inp, move |rng| {
            let s = spec(abb, 2)?;
            let run = ensemble_mcmc(&s, e.samples, &mcmc, rng)?;
            Ok([1, 3]
                .into_iter()
                .map(|k| {
                    let est = chain_estimate(&run.samples, |x| x.iter().map(|v| (v - 0.5).powi(k)).sum());
                    let mut r = ReportRecord::new(SUITE, "ensemble.reflection", tag(&echo, "k", k), est.mean, 0.0, Criterion::Sigma {
                        sigma,
                        std_error: est.std_error,
                    });
                    r.warning = run.warning.clone();
                    r
                })
                .collect())
        }));
    }
    items
}

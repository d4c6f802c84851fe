use serde_json::json;

use super::{exact, shift};
use crate::algebra::{
    box_removal_identity, kernel_ratio_gamma, norm_ratio_gamma, operator_action_mismatch, IntertwiningTriple,
    ModelParams, Shape,
};
use crate::error::Result;
use crate::harness::{inputs, Criterion, Item, ReportRecord, RunConfig};
use crate::jack::{apply_operator, eval_eigenvalue, JackEngine, Operator, Partition};
use crate::scalar::{Rational, Scalar};

const GEN: &str = "generator";
const SEMI: &str = "semigroup";

/// Upper parameters of the intertwining, moved by `delta` in control mode.
fn upper<S: Scalar>(params: &ModelParams<S>, delta: S) -> ModelParams<S> {
    let mut up = params.lifted();
    up.shape = match up.shape {
        Shape::Laguerre { d } => Shape::Laguerre { d: d + delta },
        Shape::Jacobi { a, b } => Shape::Jacobi { a: a + delta, b },
    };
    up
}

fn params_json<S: Scalar>(p: &ModelParams<S>) -> serde_json::Value {
    match &p.shape {
        Shape::Laguerre { d } => json!({"family": "laguerre", "n": p.n, "theta": p.theta.to_f64(), "d": d.to_f64()}),
        Shape::Jacobi { a, b } => {
            json!({"family": "jacobi", "n": p.n, "theta": p.theta.to_f64(), "a": a.to_f64(), "b": b.to_f64()})
        }
    }
}

/// Every process in the grid, Laguerre first.
fn processes(theta: &[f64], n: &[usize], d: &[f64], ab: &[[f64; 2]]) -> Vec<ModelParams<f64>> {
    let mut out = Vec::new();
    for &t in theta {
        for &k in n {
            out.extend(d.iter().map(|&d| ModelParams::laguerre(k, t, d)));
        }
    }
    for &t in theta {
        for &k in n {
            out.extend(ab.iter().map(|&[a, b]| ModelParams::jacobi(k, t, a, b)));
        }
    }
    out
}

fn exact_params(p: &ModelParams<f64>) -> ModelParams<Rational> {
    let shape = match p.shape {
        Shape::Laguerre { d } => Shape::Laguerre { d: exact(d) },
        Shape::Jacobi { a, b } => Shape::Jacobi { a: exact(a), b: exact(b) },
    };
    ModelParams { n: p.n, theta: exact(p.theta), shape }
}

fn family_check(p: &ModelParams<f64>, prefix: &'static str) -> &'static str {
    match (prefix, p.family()) {
        ("generator", crate::algebra::Family::Laguerre) => "generator.laguerre",
        ("generator", _) => "generator.jacobi",
        (_, crate::algebra::Family::Laguerre) => "semigroup.laguerre",
        _ => "semigroup.jacobi",
    }
}

pub(crate) fn generator_items(config: &RunConfig) -> Vec<Item<'_>> {
    let g = &config.generator;
    let tol = config.tolerances.generator;
    let delta = shift(config, config.controls.algebraic);
    let mut items = Vec::new();
    for p in processes(&g.theta, &g.n, &g.d, &g.ab) {
        let check = family_check(&p, GEN);
        let inp = inputs(json!({"process": params_json(&p), "weight": g.weight_cap, "control_shift": delta}));
        let echo = inp.clone();
        items.push(Item::new(check, inp, move |_| {
            let up = upper(&p, delta);
            let mut worst = 0.0f64;
            for top in Partition::all_of_weight(g.weight_cap, p.n) {
                worst = worst.max(IntertwiningTriple::build(&top, &p, &up)?.generator_residual());
            }
            Ok(vec![ReportRecord::new(GEN, check, echo.clone(), worst, 0.0, Criterion::Absolute { tolerance: tol })])
        }));
    }
    let formula_shift = delta;
    for &theta in &g.theta {
        let inp = inputs(json!({"theta": theta, "weight": g.gamma_weight_cap, "control_shift": delta}));
        let echo = inp.clone();
        items.push(Item::new("generator.gamma-ratio", inp, move |_| {
            gamma_ratio_records(theta, theta + formula_shift, g.gamma_weight_cap, config, &echo)
        }));
        let inp = inputs(json!({"theta": theta, "weight": g.gamma_weight_cap, "control_shift": delta}));
        let echo = inp.clone();
        items.push(Item::new("generator.eval-shift", inp, move |_| {
            eval_shift_records(theta, theta + formula_shift, g.gamma_weight_cap, config, &echo)
        }));
    }
    for &theta in &g.theta {
        for &n in &g.action_n {
            let inp = inputs(json!({"theta": theta, "n": n, "weight": g.action_weight_cap, "control_shift": delta}));
            let echo = inp.clone();
            let tol = config.tolerances.actions;
            items.push(Item::new("generator.operator-actions", inp, move |_| {
                let mut worst = 0.0f64;
                for top in Partition::all_of_weight(g.action_weight_cap, n) {
                    worst = worst.max(operator_action_mismatch(&top, n, &theta, &(theta + formula_shift))?);
                }
                let r = ReportRecord::new(GEN, "generator.operator-actions", echo.clone(), worst, 0.0, Criterion::Absolute {
                    tolerance: tol,
                });
                Ok(vec![r])
            }));
            // one particle has no interaction term, so a θ shift is invisible
            if config.control && n < 2 {
                continue;
            }
            let inp = inputs(json!({"theta": theta, "n": n, "weight": g.action_weight_cap, "control_shift": delta}));
            let echo = inp.clone();
            items.push(Item::new("generator.dyson", inp, move |_| {
                let worst = dyson_residual(theta, theta + formula_shift, n, g.action_weight_cap)?;
                Ok(vec![ReportRecord::new(GEN, "generator.dyson", echo.clone(), worst, 0.0, Criterion::Absolute {
                    tolerance: tol,
                })])
            }));
        }
    }
    items
}

/// `max` coefficient of `(B1 B2 - B2 B1) J_κ - L_Dyson J_κ` with the Dyson
/// operator at `dyson_theta`.
fn dyson_residual(theta: f64, dyson_theta: f64, n: usize, cap: u32) -> Result<f64> {
    let engine = JackEngine::new(theta)?;
    let mut worst = 0.0f64;
    for kappa in Partition::up_to_weight(cap, n) {
        let j = engine.expand(&kappa, n)?;
        let b1b2 = apply_operator(Operator::B1, &apply_operator(Operator::B2, &j, &theta), &theta);
        let b2b1 = apply_operator(Operator::B2, &apply_operator(Operator::B1, &j, &theta), &theta);
        let dyson = apply_operator(Operator::Dyson, &j, &dyson_theta);
        worst = worst.max(b1b2.sub(&b2b1).max_abs_diff(&dyson));
    }
    Ok(worst)
}

/// Every `(λ, n, i)` with `|λ| ≤ cap`, `l(λ) ≤ n ≤ cap` and `λ_(i)` a
/// partition.
fn removals(cap: u32) -> Vec<(Partition, usize, usize, Partition)> {
    let mut out = Vec::new();
    for lam in Partition::up_to_weight(cap, cap as usize) {
        for n in lam.len().max(1)..=cap as usize {
            for i in 1..=lam.len() {
                if let Some(rho) = lam.remove_box(i) {
                    out.push((lam.clone(), n, i, rho));
                }
            }
        }
    }
    out
}

/// Step-one ratios in exact arithmetic and through the Gamma function.
/// The closed forms use `formula_theta`.
fn gamma_ratio_records(
    theta: f64,
    formula_theta: f64,
    cap: u32,
    config: &RunConfig,
    echo: &crate::harness::Inputs,
) -> Result<Vec<ReportRecord>> {
    let tr = exact(theta);
    let tf = exact(formula_theta);
    let engine = JackEngine::new(tr.clone())?;
    let formula = JackEngine::new(tf.clone())?;
    let q = |k: usize| Rational::from_i64(k as i64);
    let mut exact_worst = 0.0f64;
    let mut float_worst = 0.0f64;
    for (lam, n, i, rho) in removals(cap) {
        let li = Rational::from_i64(lam.part(i) as i64);
        let one = Rational::from_i64(1);
        let lo = q(n + 1 - i) * tf.clone() + li.clone() - one.clone();
        let hi = q(n + 2 - i) * tf.clone() + li - one.clone();
        let norm_ratio = engine.norm_at_ones(&lam, n) / engine.norm_at_ones(&rho, n);
        let upper_ratio = engine.norm_at_ones(&rho, n + 1) / engine.norm_at_ones(&lam, n + 1);
        let kernel_ratio = engine.kernel_eigenvalue(&rho, n) / engine.kernel_eigenvalue(&lam, n);
        let product = norm_ratio.clone() * upper_ratio.clone() * formula.kernel_eigenvalue(&rho, n)
            / formula.kernel_eigenvalue(&lam, n);
        for (have, want) in [
            (norm_ratio.clone(), lo.clone() / tf.clone()),
            (upper_ratio, tf.clone() / hi.clone()),
            (kernel_ratio.clone(), hi / lo),
            (product, one),
        ] {
            exact_worst = exact_worst.max((have - want).abs_f64());
        }
        let rel = |got: f64, want: f64| ((got - want) / want).abs();
        float_worst = float_worst
            .max(rel(norm_ratio_gamma(&lam, i, n, formula_theta), norm_ratio.to_f64()))
            .max(rel(kernel_ratio_gamma(&lam, i, n, formula_theta), kernel_ratio.to_f64()))
            .max((box_removal_identity(&lam, i, n, formula_theta)? - 1.0).abs());
    }
    let tag = |mut m: crate::harness::Inputs, arith: &str| {
        m.insert("arithmetic".into(), json!(arith));
        m
    };
    Ok(vec![
        ReportRecord::new(GEN, "generator.gamma-ratio", tag(echo.clone(), "rational"), exact_worst, 0.0, Criterion::Absolute {
            tolerance: 0.0,
        }),
        ReportRecord::new(GEN, "generator.gamma-ratio", tag(echo.clone(), "f64"), float_worst, 0.0, Criterion::Absolute {
            tolerance: config.tolerances.gamma,
        }),
    ])
}

fn eval_shift_records(
    theta: f64,
    formula_theta: f64,
    cap: u32,
    config: &RunConfig,
    echo: &crate::harness::Inputs,
) -> Result<Vec<ReportRecord>> {
    let tr = exact(theta);
    let tf = exact(formula_theta);
    let mut exact_worst = 0.0f64;
    let mut float_worst = 0.0f64;
    for lam in Partition::up_to_weight(cap, cap as usize) {
        for n in lam.len().max(1)..=cap as usize {
            let w = Rational::from_i64(lam.weight() as i64);
            let d = eval_eigenvalue(&lam, n + 1, &tr)? - eval_eigenvalue(&lam, n, &tr)?;
            exact_worst = exact_worst.max((d - Rational::from_i64(2) * tf.clone() * w).abs_f64());
            let d = eval_eigenvalue(&lam, n + 1, &theta)? - eval_eigenvalue(&lam, n, &theta)?;
            float_worst = float_worst.max((d - 2.0 * formula_theta * lam.weight() as f64).abs());
        }
    }
    let tag = |mut m: crate::harness::Inputs, arith: &str| {
        m.insert("arithmetic".into(), json!(arith));
        m
    };
    Ok(vec![
        ReportRecord::new(GEN, "generator.eval-shift", tag(echo.clone(), "rational"), exact_worst, 0.0, Criterion::Absolute {
            tolerance: 0.0,
        }),
        ReportRecord::new(GEN, "generator.eval-shift", tag(echo.clone(), "f64"), float_worst, 0.0, Criterion::Absolute {
            tolerance: config.tolerances.gamma,
        }),
    ])
}

pub(crate) fn semigroup_items(config: &RunConfig) -> Vec<Item<'_>> {
    let s = &config.semigroup;
    let tol = config.tolerances.semigroup;
    let delta = shift(config, config.controls.algebraic);
    let mut items = Vec::new();
    for p in processes(&s.theta, &s.n, &s.d, &s.ab) {
        let check = family_check(&p, SEMI);
        let inp = inputs(json!({"process": params_json(&p), "weight": s.weight_cap, "t": s.t, "control_shift": delta}));
        items.push(Item::new(check, inp, move |_| {
            // residual per t, maximized over the top partitions
            let mut worst = vec![0.0f64; s.t.len()];
            for top in Partition::all_of_weight(s.weight_cap, p.n) {
                match p.family() {
                    crate::algebra::Family::Laguerre => {
                        let pe = exact_params(&p);
                        let triple = IntertwiningTriple::build(&top, &pe, &upper(&pe, exact(delta)))?;
                        for (w, &t) in worst.iter_mut().zip(&s.t) {
                            *w = w.max(triple.semigroup_residual(&exact(t))?);
                        }
                    }
                    crate::algebra::Family::Jacobi => {
                        let triple = IntertwiningTriple::build(&top, &p, &upper(&p, delta))?;
                        for (w, &t) in worst.iter_mut().zip(&s.t) {
                            *w = w.max(triple.semigroup_residual(&t)?);
                        }
                    }
                }
            }
            Ok(s.t
                .iter()
                .zip(worst)
                .map(|(&t, w)| {
                    let inp = inputs(json!({"process": params_json(&p), "weight": s.weight_cap, "t": t, "control_shift": delta}));
                    ReportRecord::new(SEMI, check, inp, w, 0.0, Criterion::Absolute { tolerance: tol })
                })
                .collect())
        }));
    }
    items
}

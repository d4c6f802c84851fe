//! Euler schemes for the β-Laguerre and β-Jacobi particle systems.
//!
//! Full truncation (diffusion and drift use the clamped state), substeps
//! that shrink with the squared minimum gap, then clamping to the interval
//! and sorting. Particles that coincide exactly share their pair drift,
//! which keeps degenerate starts finite until the noise separates them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{exact_moment, Family, ModelParams, Shape};
use crate::error::{domain, Error, Result};
use crate::jack::{JackEngine, Partition};
use crate::stats::Estimate;

const COINCIDENT: f64 = 1e-300;
/// Substeps never go below `dt / MAX_SUBSTEPS`.
const MAX_SUBSTEPS: f64 = 1024.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionState {
    pub coords: Vec<f64>,
    pub time: f64,
    pub params: ModelParams<f64>,
}

impl DiffusionState {
    pub fn new(coords: Vec<f64>, params: ModelParams<f64>) -> Result<Self> {
        params.validate()?;
        check_start(&coords, &params)?;
        Ok(Self { coords, time: 0.0, params })
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }
}

fn check_start(x: &[f64], params: &ModelParams<f64>) -> Result<()> {
    if x.len() != params.n {
        return Err(Error::DimensionMismatch { expected: params.n, got: x.len() });
    }
    if x.windows(2).any(|w| w[0] > w[1]) {
        return domain("start must be ordered increasingly");
    }
    let hi = match params.family() {
        Family::Laguerre => f64::INFINITY,
        Family::Jacobi => 1.0,
    };
    if x.iter().any(|v| !(0.0..=hi).contains(v)) {
        return domain(format!("start leaves [0, {hi}]"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    EulerFullTruncation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub gap_safety: f64,
    pub paths: usize,
    pub seed: u64,
    pub scheme: Scheme,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { dt: 1e-3, gap_safety: 0.25, paths: 10_000, seed: 0, scheme: Scheme::EulerFullTruncation }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return domain(format!("dt = {} must be positive", self.dt));
        }
        if self.paths == 0 {
            return domain("paths must be at least 1");
        }
        if !(self.gap_safety > 0.0) {
            return domain("gap_safety must be positive");
        }
        Ok(())
    }
}

/// `Σ_{j≠i} 2 w(x_i)/(x_i - x_j)` with `w(x) = x` (Laguerre) or `x(1-x)`
/// (Jacobi). An exactly coincident pair has the limit `2 w'(x)` as its pair
/// sum; each member takes half.
fn interaction(x: &[f64], i: usize, weight: impl Fn(f64) -> f64, slope: impl Fn(f64) -> f64) -> f64 {
    let wi = weight(x[i]);
    let mut acc = 0.0;
    for (j, xj) in x.iter().enumerate() {
        if j == i {
            continue;
        }
        let gap = x[i] - xj;
        if gap.abs() < COINCIDENT {
            acc += slope(x[i]);
        } else {
            acc += 2.0 * wi / gap;
        }
    }
    acc
}

/// `Σ_i Σ_{j≠i} 2 x_i/(x_i - x_j)`, equal to `n(n-1)` at distinct points.
pub fn interaction_sum(x: &[f64]) -> f64 {
    (0..x.len()).map(|i| interaction(x, i, |v| v, |_| 1.0)).sum()
}

fn min_gap(x: &[f64]) -> f64 {
    x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn substep_size(x: &[f64], dt: f64, remaining: f64, gap_safety: f64) -> f64 {
    let g = min_gap(x);
    let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let h = if g.is_finite() { gap_safety * g * g / scale } else { dt };
    h.min(dt).max(dt / MAX_SUBSTEPS).min(remaining)
}

fn euler_substep<R: rand::Rng + ?Sized>(x: &mut [f64], params: &ModelParams<f64>, h: f64, rng: &mut R) {
    let beta = params.beta();
    let sh = h.sqrt();
    let noise: Vec<f64> = (0..x.len()).map(|_| StandardNormal.sample(rng)).collect();
    let old = x.to_vec();
    match &params.shape {
        Shape::Laguerre { d } => {
            for i in 0..x.len() {
                let xi = old[i].max(0.0);
                let drift = beta * (0.5 * d + interaction(&old, i, |v| v.max(0.0), |_| 1.0));
                x[i] = (old[i] + 2.0 * xi.sqrt() * sh * noise[i] + drift * h).max(0.0);
            }
        }
        Shape::Jacobi { a, b } => {
            for i in 0..x.len() {
                let xi = old[i].clamp(0.0, 1.0);
                let w = |v: f64| {
                    let c = v.clamp(0.0, 1.0);
                    c * (1.0 - c)
                };
                let drift = beta * (a - (a + b) * xi + interaction(&old, i, w, |v| 1.0 - 2.0 * v.clamp(0.0, 1.0)));
                x[i] = (old[i] + 2.0 * w(xi).sqrt() * sh * noise[i] + drift * h).clamp(0.0, 1.0);
            }
        }
    }
    x.sort_by(f64::total_cmp);
}

fn step<R: rand::Rng + ?Sized>(
    state: &DiffusionState,
    family: Family,
    dt: f64,
    gap_safety: f64,
    rng: &mut R,
) -> Result<DiffusionState> {
    if state.family() != family {
        return domain(format!("expected a {family} state"));
    }
    if !(dt >= 0.0) {
        return domain(format!("dt = {dt} must be nonnegative"));
    }
    let mut x = state.coords.clone();
    let mut done = 0.0;
    while done < dt {
        let h = substep_size(&x, dt, dt - done, gap_safety);
        euler_substep(&mut x, &state.params, h, rng);
        done += h;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration { path: 0, time: state.time + done, detail: format!("state {x:?}") });
        }
    }
    Ok(DiffusionState { coords: x, time: state.time + dt, params: state.params.clone() })
}

/// One step of length `dt` of the β-Laguerre system.
pub fn step_laguerre<R: rand::Rng + ?Sized>(
    state: &DiffusionState,
    dt: f64,
    gap_safety: f64,
    rng: &mut R,
) -> Result<DiffusionState> {
    step(state, Family::Laguerre, dt, gap_safety, rng)
}

/// One step of length `dt` of the β-Jacobi system.
pub fn step_jacobi<R: rand::Rng + ?Sized>(
    state: &DiffusionState,
    dt: f64,
    gap_safety: f64,
    rng: &mut R,
) -> Result<DiffusionState> {
    step(state, Family::Jacobi, dt, gap_safety, rng)
}

/// The random stream of path `path`: the seed's ChaCha8 key with stream
/// number `path`.
pub fn path_rng(seed: u64, path: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path as u64);
    rng
}

/// Endpoints at time `t` of `config.paths` independent paths, path `k`
/// started at `starts(k)`.
pub fn simulate_from(
    starts: impl Fn(usize) -> Vec<f64> + Sync,
    params: &ModelParams<f64>,
    t: f64,
    config: &SimConfig,
) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    params.validate()?;
    if !(t >= 0.0) {
        return domain(format!("t = {t} must be nonnegative"));
    }
    let steps = (t / config.dt).ceil() as usize;
    let family = params.family();
    crate::parallel::install(|| {
        (0..config.paths)
            .into_par_iter()
            .map(|k| {
                let mut rng = path_rng(config.seed, k);
                let mut state = DiffusionState::new(starts(k), params.clone())?;
                for s in 0..steps {
                    let h = (t - s as f64 * config.dt).min(config.dt);
                    state = step(&state, family, h, config.gap_safety, &mut rng).map_err(|e| match e {
                        Error::Integration { time, detail, .. } => Error::Integration { path: k, time, detail },
                        other => other,
                    })?;
                }
                Ok(state.coords)
            })
            .collect()
    })
}

/// Endpoints at time `t` of `config.paths` paths from `x0`.
pub fn simulate(x0: &[f64], params: &ModelParams<f64>, t: f64, config: &SimConfig) -> Result<Vec<Vec<f64>>> {
    check_start(x0, params)?;
    simulate_from(|_| x0.to_vec(), params, t, config)
}

/// Monte Carlo mean of `f` over endpoints.
pub fn mc_moment(endpoints: &[Vec<f64>], f: impl Fn(&[f64]) -> f64) -> Estimate {
    let v: Vec<f64> = endpoints.iter().map(|x| f(x)).collect();
    Estimate::iid(&v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub estimate: Estimate,
    pub target: f64,
    pub z: f64,
}

impl MomentReport {
    pub fn new(estimate: Estimate, target: f64) -> Self {
        Self { z: estimate.z_against(target), estimate, target }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub mean: MomentReport,
    /// Sample variance of `‖X(t)‖` against `4t‖x0‖ + 2·dim·t²`.
    pub variance: f64,
    pub variance_target: f64,
    pub dimension: f64,
}

/// `‖X(t)‖_1` is a squared Bessel process of dimension
/// `β(dn/2 + n(n-1))`; compares its mean and variance with the simulation.
pub fn check_norm_process(params: &ModelParams<f64>, x0: &[f64], t: f64, config: &SimConfig) -> Result<NormReport> {
    let Shape::Laguerre { d } = params.shape else {
        return domain("the norm process check needs the Laguerre family");
    };
    let n = params.n as f64;
    let dimension = params.beta() * (d * n / 2.0 + n * (n - 1.0));
    let norm0: f64 = x0.iter().sum();
    let ends = simulate(x0, params, t, config)?;
    let norms: Vec<f64> = ends.iter().map(|x| x.iter().sum()).collect();
    let estimate = Estimate::iid(&norms);
    let variance = if norms.len() > 1 {
        norms.iter().map(|v| (v - estimate.mean).powi(2)).sum::<f64>() / (norms.len() - 1) as f64
    } else {
        0.0
    };
    Ok(NormReport {
        mean: MomentReport::new(estimate, norm0 + dimension * t),
        variance,
        variance_target: 4.0 * t * norm0 + 2.0 * dimension * t * t,
        dimension,
    })
}

/// Monte Carlo mean of `J_λ(X(t))` against the matrix-exponential value.
pub fn check_exact_moment(
    lambda: &Partition,
    params: &ModelParams<f64>,
    x0: &[f64],
    t: f64,
    config: &SimConfig,
) -> Result<MomentReport> {
    let target = exact_moment(x0, lambda, params, &t)?;
    let engine = JackEngine::new(params.theta)?;
    let j = engine.expand(lambda, params.n)?.to_poly();
    let ends = simulate(x0, params, t, config)?;
    Ok(MomentReport::new(mc_moment(&ends, |x| j.eval_f64(x)), target))
}

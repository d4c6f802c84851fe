//! The β-Jacobi ensemble: density, Metropolis sampler, the corollary
//! `M^{n+1}_{a-1,b-1,β} Λ = M^n_{a,b,β}`, stationarity of the SDE, and
//! symmetrization of test polynomials.

use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::ModelParams;
use crate::diffusion::{simulate_from, SimConfig};
use crate::dixon_anderson::{da_integrate, sweep_in_place, ConditionalSampler};
use crate::error::{domain, Error, Result};
use crate::jack::{JackEngine, Partition, Poly, SymmetricPoly};
use crate::quadrature::GaussJacobi;
use crate::stats::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub beta: f64,
}

impl EnsembleSpec {
    pub fn new(n: usize, a: f64, b: f64, beta: f64) -> Result<Self> {
        let s = Self { n, a, b, beta };
        s.validate()?;
        Ok(s)
    }

    /// `n ≥ 1`, `β ≥ 1` and integrable edge exponents.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return domain("n must be at least 1");
        }
        if !(self.beta >= 1.0) {
            return domain(format!("beta = {} is below 1", self.beta));
        }
        if !(self.a > 0.0 && self.b > 0.0) {
            return domain(format!("(a, b) = ({}, {}) must be positive", self.a, self.b));
        }
        Ok(())
    }

    /// The corollary regime `a, b > 1`.
    pub fn validate_corollary(&self) -> Result<()> {
        self.validate()?;
        if !(self.a > 1.0 && self.b > 1.0) {
            return domain(format!("(a, b) = ({}, {}) must both exceed 1", self.a, self.b));
        }
        Ok(())
    }

    /// Exponents `(βa/2 - 1, βb/2 - 1)` of `x` and `1 - x`.
    pub fn exponents(&self) -> (f64, f64) {
        (self.beta * self.a / 2.0 - 1.0, self.beta * self.b / 2.0 - 1.0)
    }

    /// The `n + 1` particle ensemble with parameters `(a - 1, b - 1)`.
    pub fn lifted(&self) -> Self {
        Self { n: self.n + 1, a: self.a - 1.0, b: self.b - 1.0, beta: self.beta }
    }

    pub fn theta(&self) -> f64 {
        self.beta / 2.0
    }

    /// The Jacobi process with this stationary law.
    pub fn process(&self) -> ModelParams<f64> {
        ModelParams::jacobi(self.n, self.theta(), self.a, self.b)
    }
}

/// `Σ_i [(βa/2-1) log x_i + (βb/2-1) log(1-x_i)] + β Σ_{i<j} log(x_j-x_i)`;
/// `-∞` on the boundary or at coincident points.
pub fn ensemble_log_density_unnormalized(x: &[f64], spec: &EnsembleSpec) -> Result<f64> {
    if x.len() != spec.n {
        return Err(Error::DimensionMismatch { expected: spec.n, got: x.len() });
    }
    if x.iter().any(|v| !(0.0..=1.0).contains(v)) || x.windows(2).any(|w| w[0] > w[1]) {
        return domain("x must be an ordered point of [0, 1]^n");
    }
    let (ea, eb) = spec.exponents();
    let mut acc = 0.0;
    for &v in x {
        if v <= 0.0 || v >= 1.0 {
            return Ok(f64::NEG_INFINITY);
        }
        acc += ea * v.ln() + eb * (1.0 - v).ln();
    }
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let gap = x[j] - x[i];
            if gap <= 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            acc += spec.beta * gap.ln();
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    /// Adaptive sweeps discarded before sampling.
    pub burn_in: usize,
    /// Sweeps between recorded samples.
    pub thin: usize,
    pub target_acceptance: f64,
    pub initial_scale: f64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self { burn_in: 2000, thin: 2, target_acceptance: 0.3, initial_scale: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McmcRun {
    pub samples: Vec<Vec<f64>>,
    /// Acceptance rate after adaptation; `1` for exact draws.
    pub acceptance: f64,
    pub scale: f64,
    pub warning: Option<String>,
}

/// Random-walk scale adapted towards a target acceptance rate during
/// burn-in, then frozen.
#[derive(Debug, Clone)]
struct Adaptive {
    log_scale: f64,
    target: f64,
    step: usize,
    accepted: usize,
    proposed: usize,
}

impl Adaptive {
    fn new(config: &McmcConfig) -> Self {
        Self { log_scale: config.initial_scale.ln(), target: config.target_acceptance, step: 0, accepted: 0, proposed: 0 }
    }

    fn scale(&self) -> f64 {
        self.log_scale.exp()
    }

    fn record(&mut self, accepted: bool, adapting: bool) {
        if adapting {
            self.step += 1;
            let gain = (self.step as f64).powf(-0.6);
            self.log_scale += gain * (if accepted { 1.0 } else { 0.0 } - self.target);
            self.log_scale = self.log_scale.clamp(-12.0, 0.0);
        } else {
            self.proposed += 1;
            self.accepted += accepted as usize;
        }
    }

    fn acceptance(&self) -> f64 {
        if self.proposed == 0 { 0.0 } else { self.accepted as f64 / self.proposed as f64 }
    }
}

fn acceptance_warning(rate: f64) -> Option<String> {
    (!(0.1..=0.6).contains(&rate)).then(|| format!("acceptance rate {rate:.3} outside [0.1, 0.6]"))
}

/// `steps` samples from the ensemble. Each sample is `thin` sweeps of `n`
/// single-coordinate Gaussian proposals at uniformly chosen ranks,
/// re-sorted, after the previous one;
/// `n = 1` draws `Beta(βa/2, βb/2)` exactly.
pub fn ensemble_mcmc<R: Rng + ?Sized>(
    spec: &EnsembleSpec,
    steps: usize,
    config: &McmcConfig,
    rng: &mut R,
) -> Result<McmcRun> {
    spec.validate()?;
    if spec.n == 1 {
        let dist = Beta::new(spec.beta * spec.a / 2.0, spec.beta * spec.b / 2.0)
            .map_err(|e| Error::Sampler(e.to_string()))?;
        let samples = (0..steps).map(|_| vec![dist.sample(rng)]).collect();
        return Ok(McmcRun { samples, acceptance: 1.0, scale: 0.0, warning: None });
    }
    let n = spec.n;
    let mut x: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
    let mut logp = ensemble_log_density_unnormalized(&x, spec)?;
    let mut adapt = Adaptive::new(config);
    let mut samples = Vec::with_capacity(steps);
    let total = config.burn_in + steps * config.thin.max(1);
    for sweep in 0..total {
        let adapting = sweep < config.burn_in;
        for _ in 0..n {
            // random scan: with re-sorting, a fixed-rank update is not reversible
            let i = rng.gen_range(0..n);
            let mut prop = x.clone();
            let z: f64 = StandardNormal.sample(rng);
            prop[i] += adapt.scale() * z;
            let accepted = if prop[i] > 0.0 && prop[i] < 1.0 {
                prop.sort_by(f64::total_cmp);
                let lp = ensemble_log_density_unnormalized(&prop, spec)?;
                let ok = lp - logp >= 0.0 || rng.gen::<f64>().ln() < lp - logp;
                if ok {
                    x = prop;
                    logp = lp;
                }
                ok
            } else {
                false
            };
            adapt.record(accepted, adapting);
        }
        if !adapting && (sweep - config.burn_in + 1) % config.thin.max(1) == 0 {
            samples.push(x.clone());
        }
    }
    let acceptance = adapt.acceptance();
    Ok(McmcRun { samples, acceptance, scale: adapt.scale(), warning: acceptance_warning(acceptance) })
}

/// A test polynomial with a label for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct TestPoly {
    pub label: String,
    pub poly: Poly<f64>,
}

impl TestPoly {
    /// `m_μ` in `n` variables.
    pub fn monomial(mu: &Partition, n: usize) -> Result<Self> {
        Ok(Self { label: format!("m{mu}"), poly: SymmetricPoly::<f64>::monomial(mu.clone(), n)?.to_poly() })
    }

    /// `J_λ(·; θ)` in `n` variables.
    pub fn jack(lambda: &Partition, n: usize, theta: f64) -> Result<Self> {
        let j = JackEngine::new(theta)?.expand(lambda, n)?;
        Ok(Self { label: format!("J{lambda}"), poly: j.to_poly() })
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        self.poly.eval_f64(y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorollaryMode {
    Quadrature,
    Mc,
}

/// One test polynomial's two sides: `E[p(y)]` with `x ~ M^{n+1}_{a-1,b-1}`,
/// `y ~ Λ(x, ·)` (left) and with `y ~ M^n_{a,b}` (right).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRow {
    pub label: String,
    pub lhs: Estimate,
    pub rhs: Estimate,
    /// `|lhs - rhs|` over the combined standard error (Monte Carlo), or
    /// the plain difference (quadrature).
    pub discrepancy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryBudget {
    pub samples: usize,
    pub quad_tol: f64,
    pub mcmc: McmcConfig,
}

impl Default for CorollaryBudget {
    fn default() -> Self {
        Self { samples: 100_000, quad_tol: 1e-9, mcmc: McmcConfig::default() }
    }
}

/// Checks the corollary on each test polynomial. `lhs_spec` is normally
/// `spec.lifted()`; anything else gives a control.
pub fn check_corollary<R: Rng + ?Sized>(
    spec: &EnsembleSpec,
    lhs_spec: &EnsembleSpec,
    polys: &[TestPoly],
    mode: CorollaryMode,
    budget: &CorollaryBudget,
    rng: &mut R,
) -> Result<Vec<CorollaryRow>> {
    spec.validate_corollary()?;
    lhs_spec.validate()?;
    if lhs_spec.n != spec.n + 1 || lhs_spec.beta != spec.beta {
        return domain("the left side needs n + 1 particles at the same beta");
    }
    match mode {
        CorollaryMode::Quadrature => {
            if spec.n != 1 {
                return domain("quadrature mode needs n = 1");
            }
            polys
                .iter()
                .map(|p| {
                    let lhs = corollary_lhs_quadrature(lhs_spec, p, budget.quad_tol)?;
                    let rhs = beta_moment(spec, p)?;
                    Ok(CorollaryRow {
                        label: p.label.clone(),
                        discrepancy: (lhs.mean - rhs.mean).abs(),
                        lhs,
                        rhs,
                    })
                })
                .collect()
        }
        CorollaryMode::Mc => {
            let ys = corollary_joint_chain(lhs_spec, budget.samples, &budget.mcmc, rng)?;
            let right = ensemble_mcmc(spec, budget.samples, &budget.mcmc, rng)?;
            Ok(polys
                .iter()
                .map(|p| {
                    let lhs = chain_estimate(&ys, |y| p.eval(y));
                    let rhs = chain_estimate(&right.samples, |y| p.eval(y));
                    CorollaryRow { label: p.label.clone(), discrepancy: lhs.z_between(&rhs), lhs, rhs }
                })
                .collect())
        }
    }
}

pub(crate) fn chain_estimate(samples: &[Vec<f64>], f: impl Fn(&[f64]) -> f64) -> Estimate {
    let v: Vec<f64> = samples.iter().map(|s| f(s)).collect();
    Estimate::batch_means(&v, 50)
}

/// `E[p]` under `Beta(βa/2, βb/2)` by Gauss-Jacobi, exact for polynomials.
fn beta_moment(spec: &EnsembleSpec, p: &TestPoly) -> Result<Estimate> {
    let (ea, eb) = spec.exponents();
    let rule = GaussJacobi::new(64, eb, ea)?;
    let (nodes, weights) = rule.on_interval(0.0, 1.0);
    let z: f64 = weights.iter().sum();
    let m: f64 = nodes.iter().zip(&weights).map(|(y, w)| w * p.eval(&[*y])).sum();
    Ok(Estimate { mean: m / z, std_error: 0.0, count: nodes.len() })
}

/// `∫∫ π(x) (Λp)(x) dx / ∫∫ π(x) dx` over `0 < x1 < x2 < 1`, doubling the
/// node count. The triangle is cut at `1/2` into a corner piece at the
/// origin (`x1 = s·x2`), a rectangle, and a corner piece at `(1, 1)`
/// (`1 - x2 = s·(1 - x1)`), so every endpoint singularity of `π` sits in a
/// Gauss-Jacobi weight. The inner `Λp` uses [`da_integrate`].
fn corollary_lhs_quadrature(up: &EnsembleSpec, p: &TestPoly, tol: f64) -> Result<Estimate> {
    let (ea, eb) = up.exponents();
    let beta = up.beta;
    let theta = up.theta();
    let h = 0.5;
    let rule_at = |m: usize| -> Result<f64> {
        let mut pts: Vec<(f64, f64, f64)> = Vec::with_capacity(3 * m * m);
        let (s0, ws0) = GaussJacobi::new(m, beta, ea)?.on_interval(0.0, 1.0);
        let (r0, wr0) = GaussJacobi::new(m, 0.0, 2.0 * ea + beta + 1.0)?.on_interval(0.0, h);
        for (x2, wx) in r0.iter().zip(&wr0) {
            for (s, ws) in s0.iter().zip(&ws0) {
                let x1 = s * x2;
                pts.push((x1, *x2, wx * ws * ((1.0 - x1) * (1.0 - x2)).powf(eb)));
            }
        }
        let (r1, wr1) = GaussJacobi::new(m, 0.0, ea)?.on_interval(0.0, h);
        let (q1, wq1) = GaussJacobi::new(m, eb, 0.0)?.on_interval(h, 1.0);
        for (x1, w1) in r1.iter().zip(&wr1) {
            for (x2, w2) in q1.iter().zip(&wq1) {
                let w = w1 * w2 * (1.0 - x1).powf(eb) * x2.powf(ea) * (x2 - x1).powf(beta);
                pts.push((*x1, *x2, w));
            }
        }
        let (s2, ws2) = GaussJacobi::new(m, beta, eb)?.on_interval(0.0, 1.0);
        let (r2, wr2) = GaussJacobi::new(m, 2.0 * eb + beta + 1.0, 0.0)?.on_interval(h, 1.0);
        for (x1, wx) in r2.iter().zip(&wr2) {
            for (s, ws) in s2.iter().zip(&ws2) {
                let x2 = 1.0 - s * (1.0 - x1);
                pts.push((*x1, x2, wx * ws * (x1 * x2).powf(ea)));
            }
        }
        let (mut num, mut den) = (0.0, 0.0);
        for (x1, x2, w) in pts {
            let inner = da_integrate(&[x1, x2], |y| p.eval(y), theta, tol * 1e-2)?;
            num += w * inner.value;
            den += w;
        }
        Ok(num / den)
    };
    let mut m = 8;
    let mut prev = rule_at(m)?;
    while m < 256 {
        m *= 2;
        let cur = rule_at(m)?;
        let err = (cur - prev).abs();
        if err <= tol * cur.abs().max(1.0) {
            return Ok(Estimate { mean: cur, std_error: err, count: m * m });
        }
        prev = cur;
    }
    Err(Error::Quadrature { requested: tol, achieved: f64::NAN })
}

/// `y` marginal of a two-block Gibbs chain on `(x, y)` targeting
/// `π(x) λ(x, y)`. Given `y`, each `x_i` has a density of the same shape as
/// the kernel conditionals, with the ensemble exponents at `0` and `1`, so
/// both blocks are exact inverse-CDF draws.
fn corollary_joint_chain<R: Rng + ?Sized>(
    up: &EnsembleSpec,
    count: usize,
    config: &McmcConfig,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    let m = up.n;
    let theta = up.theta();
    let (ea, eb) = up.exponents();
    let vdm = up.beta + 1.0 - 2.0 * theta;
    let sampler = ConditionalSampler::new(theta)?;
    let first = ConditionalSampler::with_exponents(ea, theta - 1.0)?;
    let last = ConditionalSampler::with_exponents(theta - 1.0, eb)?;
    let mut x: Vec<f64> = (1..=m).map(|i| i as f64 / (m + 1) as f64).collect();
    let mut y: Vec<f64> = x.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let mut out = Vec::with_capacity(count);
    let total = config.burn_in + count * config.thin.max(1);
    for sweep in 0..total {
        for i in 0..m {
            let lo = if i == 0 { 0.0 } else { y[i - 1] };
            let hi = if i == m - 1 { 1.0 } else { y[i] };
            let h = |v: f64| {
                let mut acc = 1.0;
                if i > 0 {
                    acc *= v.powf(ea);
                }
                if i < m - 1 {
                    acc *= (1.0 - v).powf(eb);
                }
                for (j, xj) in x.iter().enumerate() {
                    if j != i {
                        acc *= (v - xj).abs().powf(vdm);
                    }
                }
                for (k, yk) in y.iter().enumerate() {
                    if k + 1 != i && k != i {
                        acc *= (v - yk).abs().powf(theta - 1.0);
                    }
                }
                acc
            };
            let s = match i {
                0 => &first,
                _ if i == m - 1 => &last,
                _ => &sampler,
            };
            x[i] = s.quantile(lo, hi, h, rng.gen::<f64>())?;
        }
        sweep_in_place(&x, &mut y, theta, &sampler, rng)?;
        if sweep >= config.burn_in && (sweep - config.burn_in + 1) % config.thin.max(1) == 0 {
            out.push(y.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityRow {
    pub label: String,
    pub t: f64,
    pub sde: Estimate,
    pub ensemble: Estimate,
    pub z: f64,
}

/// Runs the Jacobi SDE for time `t` from ensemble draws and compares the
/// endpoint moments with an independent ensemble run.
pub fn check_sde_stationarity<R: Rng + ?Sized>(
    spec: &EnsembleSpec,
    polys: &[TestPoly],
    t: f64,
    sim: &SimConfig,
    mcmc: &McmcConfig,
    rng: &mut R,
) -> Result<Vec<StationarityRow>> {
    spec.validate()?;
    if !(spec.a > 1.0 / spec.beta && spec.b > 1.0 / spec.beta) {
        return domain("stationarity needs a, b > 1/beta");
    }
    let starts = ensemble_mcmc(spec, sim.paths, mcmc, rng)?.samples;
    let ends = simulate_from(|k| starts[k].clone(), &spec.process(), t, sim)?;
    let reference = ensemble_mcmc(spec, sim.paths, mcmc, rng)?.samples;
    Ok(polys
        .iter()
        .map(|p| {
            let sde = chain_estimate(&ends, |x| p.eval(x));
            let ensemble = chain_estimate(&reference, |x| p.eval(x));
            StationarityRow { label: p.label.clone(), t, z: sde.z_between(&ensemble), sde, ensemble }
        })
        .collect())
}

/// The symmetrization `(1/n!) Σ_σ q(z_σ)`: each monomial `z^e` becomes
/// `m_μ / |orbit(e)|` with `μ` the sorted exponents.
pub fn symmetrize(q: &Poly<f64>) -> Result<SymmetricPoly<f64>> {
    let n = q.nvars();
    let mut out = SymmetricPoly::zero(n);
    for (e, c) in q.terms() {
        let mut sorted = e.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(sorted)?;
        let orbit = orbit_size(e);
        out = out.add(&SymmetricPoly::monomial(mu, n)?.scaled(&(c / orbit)));
    }
    Ok(out)
}

fn orbit_size(e: &[u32]) -> f64 {
    let mut counts = std::collections::BTreeMap::new();
    for v in e {
        *counts.entry(*v).or_insert(0u32) += 1;
    }
    let mut acc = 1.0;
    let mut k = 0.0;
    for (_, c) in counts {
        for j in 1..=c {
            k += 1.0;
            acc *= k / j as f64;
        }
    }
    acc
}

/// Empirical mean of the symmetrization of `q` over `samples`.
pub fn symmetrize_and_moment(samples: &[Vec<f64>], q: &Poly<f64>) -> Result<Estimate> {
    let p = symmetrize(q)?.to_poly();
    let v: Vec<f64> = samples.iter().map(|z| p.eval_f64(z)).collect();
    Ok(Estimate::iid(&v))
}

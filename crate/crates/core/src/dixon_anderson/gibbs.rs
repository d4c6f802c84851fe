use std::io::Write;

use rand::Rng;

use crate::dixon_anderson::check_strict;
use crate::error::{Error, Result};
use crate::quadrature::GaussJacobi;

const CDF_NODES: usize = 64;
const CDF_TOL: f64 = 1e-12;

/// Inverse-CDF draws from `(y-lo)^p (hi-y)^q h(y)` on `[lo, hi]` for
/// smooth positive `h`; `p = q = θ - 1` for the Dixon-Anderson kernel.
///
/// The CDF is evaluated from whichever endpoint is nearer, each time with a
/// Gauss-Jacobi rule carrying that endpoint's singularity. Safeguarded
/// Newton steps on the CDF locate the quantile.
#[derive(Debug, Clone)]
pub struct ConditionalSampler {
    p: f64,
    q: f64,
    rule_lo: GaussJacobi,
    rule_hi: GaussJacobi,
}

impl ConditionalSampler {
    pub fn new(theta: f64) -> Result<Self> {
        Self::with_exponents(theta - 1.0, theta - 1.0)
    }

    pub fn with_exponents(p: f64, q: f64) -> Result<Self> {
        Ok(Self { p, q, rule_lo: GaussJacobi::new(CDF_NODES, 0.0, p)?, rule_hi: GaussJacobi::new(CDF_NODES, 0.0, q)? })
    }

    /// `∫_0^s u^a (1-u)^b g(u) du` with `rule` carrying `u^a`.
    fn left_mass(rule: &GaussJacobi, b: f64, s: f64, g: &impl Fn(f64) -> f64) -> f64 {
        let (nodes, weights) = rule.on_interval(0.0, s);
        nodes.iter().zip(&weights).map(|(u, w)| w * (1.0 - u).powf(b) * g(*u)).sum()
    }

    fn density(&self, s: f64, g: &impl Fn(f64) -> f64) -> f64 {
        s.powf(self.p) * (1.0 - s).powf(self.q) * g(s)
    }

    /// The quantile at level `u ∈ [0, 1)`.
    pub fn quantile(&self, lo: f64, hi: f64, h: impl Fn(f64) -> f64, u: f64) -> Result<f64> {
        let len = hi - lo;
        let g = |s: f64| h(lo + len * s);
        let g_rev = |s: f64| h(hi - len * s);
        let left_half = Self::left_mass(&self.rule_lo, self.q, 0.5, &g);
        let right_half = Self::left_mass(&self.rule_hi, self.p, 0.5, &g_rev);
        let total = left_half + right_half;
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Sampler(format!("conditional mass {total} on [{lo}, {hi}]")));
        }
        let cdf = |s: f64| {
            if s <= 0.5 {
                Self::left_mass(&self.rule_lo, self.q, s, &g)
            } else {
                total - Self::left_mass(&self.rule_hi, self.p, 1.0 - s, &g_rev)
            }
        };
        let target = u * total;
        let (mut a, mut b) = (0.0f64, 1.0f64);
        let mut s = 0.5;
        for _ in 0..200 {
            let c = cdf(s) - target;
            if c.abs() <= CDF_TOL * total {
                return Ok(lo + len * s);
            }
            if c < 0.0 {
                a = s;
            } else {
                b = s;
            }
            if b - a <= CDF_TOL {
                break;
            }
            let step = s - c / self.density(s, &g);
            s = if step.is_finite() && step > a && step < b { step } else { 0.5 * (a + b) };
        }
        Ok(lo + len * 0.5 * (a + b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GibbsConfig {
    pub burn_in: usize,
    pub thin: usize,
}

impl Default for GibbsConfig {
    fn default() -> Self {
        Self { burn_in: 50, thin: 5 }
    }
}

struct Chain<'a> {
    x: &'a [f64],
    y: Vec<f64>,
    theta: f64,
    sampler: ConditionalSampler,
}

impl<'a> Chain<'a> {
    fn new(x: &'a [f64], theta: f64) -> Result<Self> {
        check_strict(x)?;
        if theta <= 0.0 {
            return Err(Error::Domain(format!("theta = {theta} must be positive")));
        }
        let y = x.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        Ok(Self { x, y, theta, sampler: ConditionalSampler::new(theta)? })
    }

    fn sweep<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        sweep_in_place(self.x, &mut self.y, self.theta, &self.sampler, rng)
    }
}

/// One systematic-scan Gibbs sweep over `y` given `x`.
pub(crate) fn sweep_in_place<R: Rng + ?Sized>(
    x: &[f64],
    y: &mut [f64],
    theta: f64,
    sampler: &ConditionalSampler,
    rng: &mut R,
) -> Result<()> {
    for i in 0..y.len() {
        let h = |v: f64| {
            let mut acc = 1.0;
            for (j, yj) in y.iter().enumerate() {
                if j != i {
                    acc *= (v - yj).abs();
                }
            }
            for (j, xj) in x.iter().enumerate() {
                if j != i && j != i + 1 {
                    acc *= (v - xj).abs().powf(theta - 1.0);
                }
            }
            acc
        };
        let v = sampler.quantile(x[i], x[i + 1], h, rng.gen::<f64>())?;
        y[i] = v;
    }
    if !interlaces(x, y) {
        return Err(Error::Sampler(format!("sample {y:?} does not interlace with {x:?}")));
    }
    Ok(())
}

fn interlaces(x: &[f64], y: &[f64]) -> bool {
    y.iter().enumerate().all(|(i, v)| x[i] <= *v && *v <= x[i + 1])
}

/// State of a Gibbs chain started at the interval midpoints after `sweeps`
/// full sweeps.
pub fn da_gibbs_sample<R: Rng + ?Sized>(x: &[f64], theta: f64, sweeps: usize, rng: &mut R) -> Result<Vec<f64>> {
    let mut chain = Chain::new(x, theta)?;
    for _ in 0..sweeps {
        chain.sweep(rng)?;
    }
    Ok(chain.y)
}

/// `count` thinned states of one chain after burn-in.
pub fn da_gibbs_chain<R: Rng + ?Sized>(
    x: &[f64],
    theta: f64,
    count: usize,
    config: GibbsConfig,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    let mut chain = Chain::new(x, theta)?;
    for _ in 0..config.burn_in {
        chain.sweep(rng)?;
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        for _ in 0..config.thin.max(1) {
            chain.sweep(rng)?;
        }
        out.push(chain.y.clone());
    }
    Ok(out)
}

/// Writes `x..., y...` rows under a `# n= theta= seed=` comment line.
pub fn write_samples_csv<W: Write>(
    mut w: W,
    x: &[f64],
    samples: &[Vec<f64>],
    theta: f64,
    seed: u64,
) -> std::io::Result<()> {
    let n = x.len() - 1;
    writeln!(w, "# n={n} theta={theta} seed={seed}")?;
    let mut cols: Vec<String> = (1..=n + 1).map(|i| format!("x{i}")).collect();
    cols.extend((1..=n).map(|i| format!("y{i}")));
    writeln!(w, "{}", cols.join(","))?;
    for y in samples {
        let row: Vec<String> = x.iter().chain(y).map(|v| v.to_string()).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

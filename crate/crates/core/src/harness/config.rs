use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Generator,
    Semigroup,
    Kernel,
    Sde,
    Ensemble,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Generator, Suite::Semigroup, Suite::Kernel, Suite::Sde, Suite::Ensemble];

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::EACH.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Generator => "generator",
            Suite::Semigroup => "semigroup",
            Suite::Kernel => "kernel",
            Suite::Sde => "sde",
            Suite::Ensemble => "ensemble",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generator" => Ok(Suite::Generator),
            "semigroup" => Ok(Suite::Semigroup),
            "kernel" => Ok(Suite::Kernel),
            "sde" => Ok(Suite::Sde),
            "ensemble" => Ok(Suite::Ensemble),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!("unknown suite {s:?}"))),
        }
    }
}

/// Everything a verification run needs. Every field has a default, so an
/// empty file is a valid configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Report path; `None` prints to stdout.
    pub output: Option<PathBuf>,
    /// Run the falsification controls instead of the checks.
    pub control: bool,
    pub generator: GeneratorGrid,
    pub semigroup: SemigroupGrid,
    pub kernel: KernelGrid,
    pub sde: SdeGrid,
    pub ensemble: EnsembleGrid,
    pub tolerances: Tolerances,
    pub controls: ControlShifts,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 1,
            output: None,
            control: false,
            generator: GeneratorGrid::default(),
            semigroup: SemigroupGrid::default(),
            kernel: KernelGrid::default(),
            sde: SdeGrid::default(),
            ensemble: EnsembleGrid::default(),
            tolerances: Tolerances::default(),
            controls: ControlShifts::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorGrid {
    pub theta: Vec<f64>,
    pub n: Vec<usize>,
    pub d: Vec<f64>,
    pub ab: Vec<[f64; 2]>,
    pub weight_cap: u32,
    pub gamma_weight_cap: u32,
    pub action_weight_cap: u32,
    pub action_n: Vec<usize>,
}

impl Default for GeneratorGrid {
    fn default() -> Self {
        Self {
            theta: vec![0.5, 0.75, 1.0, 1.5, 2.0],
            n: vec![1, 2, 3],
            d: vec![2.0, 3.0, 5.5],
            ab: vec![[1.0, 1.0], [2.0, 2.0], [2.5, 1.5]],
            weight_cap: 5,
            gamma_weight_cap: 6,
            action_weight_cap: 4,
            action_n: vec![1, 2, 3, 4],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SemigroupGrid {
    pub theta: Vec<f64>,
    pub n: Vec<usize>,
    pub d: Vec<f64>,
    pub ab: Vec<[f64; 2]>,
    pub weight_cap: u32,
    pub t: Vec<f64>,
}

impl Default for SemigroupGrid {
    fn default() -> Self {
        let g = GeneratorGrid::default();
        Self { theta: g.theta, n: g.n, d: g.d, ab: g.ab, weight_cap: 5, t: vec![0.1, 1.0, 5.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelGrid {
    pub theta: Vec<f64>,
    /// Number of `y` coordinates; `x` has one more.
    pub n: Vec<usize>,
    pub weight_cap: u32,
    pub quad_tol: f64,
    /// Gibbs cross-check, skipped when `mc_samples = 0`.
    pub mc_n: usize,
    pub mc_theta: f64,
    pub mc_samples: usize,
}

impl Default for KernelGrid {
    fn default() -> Self {
        Self {
            theta: vec![0.5, 1.0, 2.0],
            n: vec![1, 2, 3],
            weight_cap: 4,
            quad_tol: 1e-9,
            mc_n: 2,
            mc_theta: 1.5,
            mc_samples: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SdeGrid {
    pub paths: usize,
    pub dt: f64,
    pub gap_safety: f64,
    pub norm_n: Vec<usize>,
    /// `(β, d)` pairs for the norm process.
    pub norm_beta_d: Vec<[f64; 2]>,
    pub norm_t: Vec<f64>,
    pub moment_t: f64,
    /// Partitions as part lists, e.g. `[[1], [2]]`.
    pub moment_lambda: Vec<Vec<u32>>,
    pub bias_paths: usize,
    /// Coarse step rule of the bias check; the fine run halves both.
    pub bias_dt: f64,
    pub bias_gap_safety: f64,
    pub bias_t: f64,
}

impl Default for SdeGrid {
    fn default() -> Self {
        Self {
            paths: 10_000,
            dt: 1e-3,
            gap_safety: 0.25,
            norm_n: vec![1, 2, 3],
            norm_beta_d: vec![[1.0, 2.0], [2.0, 3.0]],
            norm_t: vec![0.5, 1.0],
            moment_t: 0.5,
            moment_lambda: vec![vec![1], vec![2]],
            bias_paths: 200_000,
            bias_dt: 0.2,
            bias_gap_safety: 2.0,
            bias_t: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnsembleGrid {
    /// `(a, b, β)` triples for the one-particle quadrature check.
    pub quadrature: Vec<[f64; 3]>,
    pub max_degree: u32,
    pub quad_tol: f64,
    /// `(n, a, b, β)` for the Monte Carlo two-estimator check.
    pub mc: [f64; 4],
    pub samples: usize,
    /// `(a, b, β)` of the one-particle stationarity and Beta-moment checks.
    pub one_particle: [f64; 3],
    /// `(a, b, β)` of the two-particle stationarity and reflection checks.
    pub two_particle: [f64; 3],
    pub stationarity_t: Vec<f64>,
    pub stationarity_paths: usize,
}

impl Default for EnsembleGrid {
    fn default() -> Self {
        Self {
            quadrature: vec![[2.0, 2.0, 2.0], [2.5, 1.5, 1.0], [3.0, 2.0, 1.0]],
            max_degree: 4,
            quad_tol: 1e-9,
            mc: [2.0, 2.5, 1.5, 1.0],
            samples: 100_000,
            one_particle: [2.0, 2.0, 2.0],
            two_particle: [2.0, 2.0, 2.0],
            stationarity_t: vec![0.1, 1.0, 5.0],
            stationarity_paths: 10_000,
        }
    }
}

/// Deterministic checks compare against absolute (or relative) bounds;
/// stochastic checks against `sigma` standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub generator: f64,
    pub semigroup: f64,
    pub gamma: f64,
    pub actions: f64,
    pub kernel: f64,
    pub corollary_quadrature: f64,
    pub sigma: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            generator: 1e-10,
            semigroup: 1e-9,
            gamma: 1e-12,
            actions: 1e-9,
            kernel: 1e-6,
            corollary_quadrature: 1e-6,
            sigma: 3.0,
        }
    }
}

/// Parameter shifts applied to one side of each check in control mode.
/// The stochastic shifts are larger so the controls fail with high
/// probability at the configured budgets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControlShifts {
    pub algebraic: f64,
    pub sde: f64,
    pub ensemble_mc: f64,
}

impl Default for ControlShifts {
    fn default() -> Self {
        Self { algebraic: 0.1, sde: 1.0, ensemble_mc: 0.5 }
    }
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Replaces `key` in every section that has it. `values` is a TOML
    /// array body such as `0.5, 1` or `[2, 2], [2.5, 1.5]`; a scalar key
    /// takes the single value given.
    pub fn override_grid(&mut self, key: &str, values: &str) -> Result<()> {
        let parsed: toml::Table = toml::from_str(&format!("v = [{values}]"))
            .map_err(|e| Error::Config(format!("--grid {key}={values}: {e}")))?;
        let new = parsed["v"].as_array().cloned().unwrap_or_default();
        let mut root = toml::Value::try_from(&*self).map_err(|e| Error::Config(e.to_string()))?;
        let mut hits = 0;
        for section in ["generator", "semigroup", "kernel", "sde", "ensemble"] {
            let Some(slot) = root.get_mut(section).and_then(|s| s.get_mut(key)) else { continue };
            let replacement = match &*slot {
                toml::Value::Array(old) => toml::Value::Array(new.iter().map(|v| like(old.first(), v)).collect()),
                old => match new.as_slice() {
                    [single] => like(Some(old), single),
                    _ => return config_err(format!("--grid {key} takes a single value")),
                },
            };
            *slot = replacement;
            hits += 1;
        }
        if hits == 0 {
            return config_err(format!("--grid: no section has a key {key:?}"));
        }
        *self = root.try_into().map_err(|e: toml::de::Error| Error::Config(format!("--grid {key}: {e}")))?;
        self.validate()
    }

    /// Rejects grids outside the documented domains.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, xs: &[f64]| -> Result<()> {
            match xs.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                Some(v) => config_err(format!("{name}: {v} must be positive and finite")),
                None => Ok(()),
            }
        };
        let g = &self.generator;
        for (name, theta, n, d, ab) in [
            ("generator", &g.theta, &g.n, &g.d, &g.ab),
            ("semigroup", &self.semigroup.theta, &self.semigroup.n, &self.semigroup.d, &self.semigroup.ab),
        ] {
            positive(&format!("{name}.theta"), theta)?;
            if let Some(t) = theta.iter().find(|t| **t < 0.5) {
                return config_err(format!("{name}.theta = {t}: the intertwining needs beta = 2 theta >= 1"));
            }
            if n.contains(&0) {
                return config_err(format!("{name}.n must be at least 1"));
            }
            if let Some(v) = d.iter().find(|v| **v < 2.0) {
                return config_err(format!("{name}.d = {v} is below 2"));
            }
            if let Some([a, b]) = ab.iter().find(|[a, b]| *a < 1.0 || *b < 1.0) {
                return config_err(format!("{name}.ab = ({a}, {b}): both must be at least 1"));
            }
        }
        if g.action_n.contains(&0) {
            return config_err("generator.action_n must be at least 1");
        }
        positive("semigroup.t", &self.semigroup.t)?;
        let k = &self.kernel;
        positive("kernel.theta", &k.theta)?;
        if let Some(n) = k.n.iter().find(|n| **n == 0 || **n > 3) {
            return config_err(format!("kernel.n = {n}: quadrature supports 1 to 3"));
        }
        positive("kernel.quad_tol", &[k.quad_tol])?;
        positive("kernel.mc_theta", &[k.mc_theta])?;
        if k.mc_samples > 0 && k.mc_n == 0 {
            return config_err("kernel.mc_n must be at least 1");
        }
        let s = &self.sde;
        positive("sde.dt", &[s.dt, s.bias_dt, s.gap_safety, s.bias_gap_safety, s.moment_t, s.bias_t])?;
        positive("sde.norm_t", &s.norm_t)?;
        if s.paths < 2 || s.bias_paths < 2 {
            return config_err("sde paths must be at least 2");
        }
        if s.norm_n.contains(&0) {
            return config_err("sde.norm_n must be at least 1");
        }
        for [beta, d] in &s.norm_beta_d {
            if !(*beta >= 1.0 && *d >= 0.0) {
                return config_err(format!("sde.norm_beta_d = ({beta}, {d}): need beta >= 1, d >= 0"));
            }
        }
        for parts in &s.moment_lambda {
            crate::jack::Partition::new(parts.clone()).map_err(|e| Error::Config(format!("sde.moment_lambda: {e}")))?;
            if parts.len() > 2 {
                return config_err("sde.moment_lambda: at most two parts (two particles are simulated)");
            }
        }
        let e = &self.ensemble;
        for [a, b, beta] in &e.quadrature {
            if !(*a > 1.0 && *b > 1.0 && *beta >= 1.0) {
                return config_err(format!("ensemble.quadrature ({a}, {b}, {beta}): need a, b > 1 and beta >= 1"));
            }
        }
        let [n, a, b, beta] = e.mc;
        if !(n >= 1.0 && n.fract() == 0.0 && a > 1.0 && b > 1.0 && beta >= 1.0) {
            return config_err(format!("ensemble.mc {:?}: need integer n >= 1, a, b > 1, beta >= 1", e.mc));
        }
        for (name, [a, b, beta]) in [("one_particle", e.one_particle), ("two_particle", e.two_particle)] {
            if !(a > 1.0 && b > 1.0 && beta >= 1.0) {
                return config_err(format!("ensemble.{name}: need a, b > 1 and beta >= 1"));
            }
        }
        positive("ensemble.stationarity_t", &e.stationarity_t)?;
        if e.samples < 100 || e.stationarity_paths < 100 {
            return config_err("ensemble sample counts must be at least 100");
        }
        if !(self.tolerances.sigma > 0.0) {
            return config_err("tolerances.sigma must be positive");
        }
        Ok(())
    }
}

/// `v` coerced to the numeric type of `template`.
fn like(template: Option<&toml::Value>, v: &toml::Value) -> toml::Value {
    match (template, v) {
        (Some(toml::Value::Float(_)), toml::Value::Integer(i)) => toml::Value::Float(*i as f64),
        (Some(toml::Value::Array(t)), toml::Value::Array(items)) => {
            toml::Value::Array(items.iter().map(|x| like(t.first(), x)).collect())
        }
        _ => v.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_default() {
        assert_eq!(RunConfig::from_toml_str("").unwrap(), RunConfig::default());
        let round = RunConfig::from_toml_str(&RunConfig::default().to_toml_string()).unwrap();
        assert_eq!(round, RunConfig::default());
    }

    #[test]
    fn malformed_and_out_of_domain() {
        assert!(matches!(RunConfig::from_toml_str("suite = 3"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_toml_str("bogus = 1"), Err(Error::Config(_))));
        assert!(RunConfig::from_toml_str("[generator]\nd = [1.5]").is_err());
        assert!(RunConfig::from_toml_str("[generator]\ntheta = [0.25]").is_err());
        assert!(RunConfig::from_toml_str("[kernel]\nn = [4]").is_err());
    }

    #[test]
    fn grid_override() {
        let mut c = RunConfig::default();
        c.override_grid("theta", "1, 2").unwrap();
        assert_eq!(c.generator.theta, vec![1.0, 2.0]);
        assert_eq!(c.kernel.theta, vec![1.0, 2.0]);
        c.override_grid("ab", "[2, 2]").unwrap();
        assert_eq!(c.semigroup.ab, vec![[2.0, 2.0]]);
        c.override_grid("weight_cap", "3").unwrap();
        assert_eq!(c.generator.weight_cap, 3);
        assert!(c.override_grid("weight_cap", "3, 4").is_err());
        assert!(c.override_grid("nonsense", "1").is_err());
        assert!(c.override_grid("d", "1").is_err());
    }
}

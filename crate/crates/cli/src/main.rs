use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use intertwine::algebra::ModelParams;
use intertwine::diffusion::{simulate, SimConfig};
use intertwine::dixon_anderson::{da_gibbs_chain, write_samples_csv, GibbsConfig};
use intertwine::ensemble::{ensemble_mcmc, EnsembleSpec, McmcConfig};
use intertwine::harness::{describe_check, run_suite, ExitStatus, RunConfig, Suite, CHECKS};
use intertwine::Error;

#[derive(Parser)]
#[command(name = "intertwine", version, about = "Intertwining checks for beta-Laguerre and beta-Jacobi processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Verify {
        /// generator, semigroup, kernel, sde, ensemble or all
        suite: String,
        /// TOML run configuration
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Path budget for every simulation check
        #[arg(long)]
        paths: Option<usize>,
        /// Grid override `key=v1,v2,...`, applied to every section with that key
        #[arg(long, value_name = "KEY=VALUES")]
        grid: Vec<String>,
        /// Run the shifted-parameter controls, which must fail
        #[arg(long)]
        control: bool,
    },
    /// Simulate a process and write the endpoints as CSV.
    Simulate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 3.0)]
        d: f64,
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        /// Start point, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        x0: Vec<f64>,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 10_000)]
        paths: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw from the Dixon-Anderson kernel by Gibbs sampling.
    SampleKernel {
        /// The n + 1 conditioning points, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        burn_in: usize,
        #[arg(long, default_value_t = 5)]
        thin: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw from the beta-Jacobi ensemble by Metropolis sampling.
    SampleEnsemble {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print what a check verifies and how it is judged.
    Describe {
        /// Check id, e.g. kernel.eigenrelation; `list` prints every id
        check: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Laguerre,
    Jacobi,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("intertwine: {e}");
            let status = match e {
                Failure::Config(_) => ExitStatus::ConfigError,
                Failure::Numerical(_) | Failure::Io(_) => ExitStatus::NumericalFailure,
                Failure::Unknown(_) => ExitStatus::CheckFailure,
            };
            ExitCode::from(status.code() as u8)
        }
    }
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Numerical(Error),
    Io(io::Error),
    Unknown(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Numerical(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
            Failure::Unknown(id) => write!(f, "unknown check {id:?}; `intertwine describe list` prints the ids"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Config(m),
            // bad user parameters for a sampler are configuration errors too
            Error::Domain(m) => Failure::Config(m),
            e => Failure::Numerical(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(command: Command) -> Result<ExitStatus, Failure> {
    match command {
        Command::Verify { suite, config, seed, out, paths, grid, control } => {
            let mut cfg = match &config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            cfg.suite = suite.parse::<Suite>()?;
            cfg.control |= control;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(p) = paths {
                cfg.sde.paths = p;
                cfg.sde.bias_paths = p;
                cfg.ensemble.stationarity_paths = p;
            }
            for g in &grid {
                let (key, values) =
                    g.split_once('=').ok_or_else(|| Failure::Config(format!("--grid {g:?} is not KEY=VALUES")))?;
                cfg.override_grid(key.trim(), values)?;
            }
            cfg.validate()?;
            let report = run_suite(&cfg)?;
            let mut w = sink(out.as_deref().or(cfg.output.as_deref()))?;
            writeln!(w, "{}", report.to_json())?;
            w.flush()?;
            let s = &report.summary;
            eprintln!(
                "{} {}: {}/{} passed, {} numerical failures",
                s.suite,
                if s.control { "(control)" } else { "" },
                s.passed,
                s.total,
                s.numerical_failures
            );
            for f in &s.failures {
                eprintln!("  failed: {f}");
            }
            Ok(report.exit_status())
        }
        Command::Simulate { family, theta, d, a, b, x0, t, dt, paths, seed, out } => {
            let n = x0.len();
            let params = match family {
                FamilyArg::Laguerre => ModelParams::laguerre(n, theta, d),
                FamilyArg::Jacobi => ModelParams::jacobi(n, theta, a, b),
            };
            let ends = simulate(&x0, &params, t, &SimConfig { dt, paths, seed, ..SimConfig::default() })?;
            let mut w = sink(out.as_deref())?;
            writeln!(w, "# {params} t={t} dt={dt} seed={seed}")?;
            let cols: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            writeln!(w, "path,{}", cols.join(","))?;
            for (k, x) in ends.iter().enumerate() {
                let row: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                writeln!(w, "{k},{}", row.join(","))?;
            }
            w.flush()?;
            Ok(ExitStatus::Pass)
        }
        Command::SampleKernel { x, theta, samples, burn_in, thin, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ys = da_gibbs_chain(&x, theta, samples, GibbsConfig { burn_in, thin }, &mut rng)?;
            let mut w = sink(out.as_deref())?;
            write_samples_csv(&mut w, &x, &ys, theta, seed)?;
            w.flush()?;
            Ok(ExitStatus::Pass)
        }
        Command::SampleEnsemble { n, a, b, beta, samples, seed, out } => {
            let spec = EnsembleSpec::new(n, a, b, beta)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let run = ensemble_mcmc(&spec, samples, &McmcConfig::default(), &mut rng)?;
            if let Some(warn) = &run.warning {
                eprintln!("warning: {warn}");
            }
            let mut w = sink(out.as_deref())?;
            writeln!(w, "# n={n} a={a} b={b} beta={beta} seed={seed} acceptance={:.4}", run.acceptance)?;
            let cols: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            writeln!(w, "{}", cols.join(","))?;
            for x in &run.samples {
                let row: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                writeln!(w, "{}", row.join(","))?;
            }
            w.flush()?;
            Ok(ExitStatus::Pass)
        }
        Command::Describe { check } => {
            if check == "list" {
                for c in CHECKS {
                    println!("{:<28} {}", c.id, c.claim);
                }
                return Ok(ExitStatus::Pass);
            }
            match describe_check(&check) {
                Some(info) => {
                    println!("{info}");
                    Ok(ExitStatus::Pass)
                }
                None => Err(Failure::Unknown(check)),
            }
        }
    }
}

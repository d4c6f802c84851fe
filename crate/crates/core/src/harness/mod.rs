//! Verification suites, run configuration and JSON reports.

mod catalog;
mod config;
mod report;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

pub use catalog::{describe_check, CheckInfo, CHECKS};
pub use config::{
    ControlShifts, EnsembleGrid, GeneratorGrid, KernelGrid, RunConfig, SdeGrid, SemigroupGrid, Suite, Tolerances,
};
pub use report::{Criterion, ExitStatus, Report, ReportRecord, Summary};

use crate::error::Result;
use crate::parallel;

pub(crate) type Inputs = BTreeMap<String, Value>;

/// `json!({...})` object as an inputs map.
pub(crate) fn inputs(v: Value) -> Inputs {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

/// One schedulable unit: a check id, its echoed inputs and the work.
pub(crate) struct Item<'a> {
    pub check: &'static str,
    pub inputs: Inputs,
    #[allow(clippy::type_complexity)]
    pub job: Box<dyn Fn(&mut ChaCha8Rng) -> Result<Vec<ReportRecord>> + Send + Sync + 'a>,
}

impl<'a> Item<'a> {
    pub fn new(
        check: &'static str,
        inputs: Inputs,
        job: impl Fn(&mut ChaCha8Rng) -> Result<Vec<ReportRecord>> + Send + Sync + 'a,
    ) -> Self {
        Self { check, inputs, job: Box::new(job) }
    }
}

/// Runs the configured suites on the worker pool. Record order and every
/// field except `wall_time_s` depend only on the configuration.
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut records = Vec::new();
    for suite in config.suite.expand() {
        let items = suites::items(suite, config);
        let ran: Vec<Vec<ReportRecord>> = parallel::install(|| {
            items
                .par_iter()
                .enumerate()
                .map(|(k, item)| run_item(suite, config, k, item))
                .collect()
        });
        records.extend(ran.into_iter().flatten());
    }
    Ok(Report::new(config.suite.name(), config.control, config.seed, records))
}

fn run_item(suite: Suite, config: &RunConfig, k: usize, item: &Item<'_>) -> Vec<ReportRecord> {
    let mut rng = item_rng(config.seed, suite, k);
    let start = Instant::now();
    let out = (item.job)(&mut rng);
    let elapsed = start.elapsed().as_secs_f64();
    let mut recs = match out {
        Ok(recs) => recs,
        Err(e) => vec![ReportRecord::failed(suite.name(), item.check, item.inputs.clone(), e.to_string())],
    };
    for r in &mut recs {
        r.suite = suite.name().into();
        r.control = config.control;
        r.wall_time_s = elapsed;
    }
    recs
}

fn item_rng(seed: u64, suite: Suite, k: usize) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | k as u64);
    rng
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How `observed` is judged against `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Criterion {
    /// `|observed - target| ≤ tolerance`
    Absolute { tolerance: f64 },
    /// `|observed - target| ≤ tolerance·|target|`
    Relative { tolerance: f64 },
    /// `|observed - target| ≤ sigma·std_error`
    Sigma { sigma: f64, std_error: f64 },
    /// `observed < target` with `target > sigma·std_error`: an error that
    /// is significant at the coarse setting and smaller at the fine one.
    Shrinks { sigma: f64, std_error: f64 },
}

impl Criterion {
    pub fn judge(&self, observed: f64, target: f64) -> bool {
        let gap = (observed - target).abs();
        match *self {
            Criterion::Absolute { tolerance } => gap <= tolerance,
            Criterion::Relative { tolerance } => gap <= tolerance * target.abs(),
            Criterion::Sigma { sigma, std_error } => std_error > 0.0 && gap <= sigma * std_error,
            Criterion::Shrinks { sigma, std_error } => observed < target && target > sigma * std_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub suite: String,
    pub check: String,
    pub control: bool,
    pub inputs: BTreeMap<String, Value>,
    pub observed: f64,
    pub target: f64,
    pub criterion: Criterion,
    pub pass: bool,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
    /// Sampler diagnostics that do not fail the check.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
    pub wall_time_s: f64,
}

impl ReportRecord {
    pub fn new(
        suite: &str,
        check: &str,
        inputs: BTreeMap<String, Value>,
        observed: f64,
        target: f64,
        criterion: Criterion,
    ) -> Self {
        let pass = observed.is_finite() && target.is_finite() && criterion.judge(observed, target);
        Self {
            suite: suite.into(),
            check: check.into(),
            control: false,
            inputs,
            observed,
            target,
            criterion,
            pass,
            error: None,
            warning: None,
            wall_time_s: 0.0,
        }
    }

    pub fn failed(suite: &str, check: &str, inputs: BTreeMap<String, Value>, error: String) -> Self {
        Self {
            suite: suite.into(),
            check: check.into(),
            control: false,
            inputs,
            observed: f64::NAN,
            target: f64::NAN,
            criterion: Criterion::Absolute { tolerance: 0.0 },
            pass: false,
            error: Some(error),
            warning: None,
            wall_time_s: 0.0,
        }
    }

    /// `|observed - target|`
    pub fn deviation(&self) -> f64 {
        (self.observed - self.target).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub control: bool,
    pub seed: u64,
    pub version: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub numerical_failures: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<ReportRecord>,
    pub summary: Summary,
}

/// Process exit codes of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailure = 2,
    ConfigError = 3,
    NumericalFailure = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl Report {
    pub fn new(suite: &str, control: bool, seed: u64, records: Vec<ReportRecord>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let numerical_failures = records.iter().filter(|r| r.error.is_some()).count();
        let failures = records
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{} {}", r.check, serde_json::to_string(&r.inputs).unwrap_or_default()))
            .collect();
        Self {
            summary: Summary {
                suite: suite.into(),
                control,
                seed,
                version: env!("CARGO_PKG_VERSION").into(),
                total: records.len(),
                passed,
                failed: records.len() - passed,
                numerical_failures,
                failures,
            },
            records,
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        if self.summary.numerical_failures > 0 {
            ExitStatus::NumericalFailure
        } else if self.summary.failed > 0 {
            ExitStatus::CheckFailure
        } else {
            ExitStatus::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every wall-time field zeroed, for reproducibility diffs.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_time_s = 0.0;
        }
        r.to_json()
    }
}

//! Monte Carlo summaries.

use serde::{Deserialize, Serialize};

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub count: usize,
}

impl Estimate {
    /// Mean and standard error of independent draws.
    pub fn iid(values: &[f64]) -> Self {
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let var = if count > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        Self { mean, std_error: (var / count as f64).sqrt(), count }
    }

    /// Batch-means standard error for a correlated chain.
    pub fn batch_means(values: &[f64], batches: usize) -> Self {
        let batches = batches.clamp(1, values.len().max(1));
        let size = values.len() / batches;
        if size < 2 || batches < 2 {
            return Self::iid(values);
        }
        let means: Vec<f64> = values
            .chunks_exact(size)
            .take(batches)
            .map(|c| c.iter().sum::<f64>() / size as f64)
            .collect();
        let b = Self::iid(&means);
        Self { mean: values.iter().sum::<f64>() / values.len() as f64, std_error: b.std_error, count: values.len() }
    }

    /// Pools estimates of the same quantity from independent chains.
    pub fn pooled(parts: &[Estimate]) -> Self {
        let count: usize = parts.iter().map(|p| p.count).sum();
        let mean = parts.iter().map(|p| p.mean * p.count as f64).sum::<f64>() / count as f64;
        let var = parts
            .iter()
            .map(|p| (p.std_error * p.count as f64 / count as f64).powi(2))
            .sum::<f64>();
        Self { mean, std_error: var.sqrt(), count }
    }

    /// `|mean - target|` in units of the standard error.
    pub fn z_against(&self, target: f64) -> f64 {
        z_score(self.mean - target, self.std_error)
    }

    /// `|a - b|` in units of the combined standard error.
    pub fn z_between(&self, other: &Estimate) -> f64 {
        z_score(self.mean - other.mean, self.std_error.hypot(other.std_error))
    }
}

fn z_score(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff.abs() / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

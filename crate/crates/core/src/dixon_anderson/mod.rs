//! The Dixon-Anderson conditional density `λ^θ_{n,n+1}(x, y)` on the
//! configurations `y` interlacing with `x`.

mod check;
mod gibbs;
mod integrate;

pub use check::{check_kernel_eigenrelation, EigenMode, EigenrelationResult};
pub(crate) use gibbs::sweep_in_place;
pub use gibbs::{da_gibbs_chain, da_gibbs_sample, write_samples_csv, ConditionalSampler, GibbsConfig};
pub use integrate::{da_integrate, QuadEstimate, DEFAULT_MAX_POINTS};

use crate::algebra::Family;
use crate::error::{domain, Error, Result};
use crate::special::ln_gamma_signed;

/// `x ∈ W^{n+1}(I)` and `y ∈ W^n(I)` with `x_1 ≤ y_1 ≤ x_2 ≤ … ≤ y_n ≤ x_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingPair {
    x: Vec<f64>,
    y: Vec<f64>,
    domain: Family,
}

impl InterlacingPair {
    pub fn new(x: Vec<f64>, y: Vec<f64>, family: Family) -> Result<Self> {
        check_outer(&x, family)?;
        if y.len() + 1 != x.len() {
            return Err(Error::DimensionMismatch { expected: x.len() - 1, got: y.len() });
        }
        for (i, yi) in y.iter().enumerate() {
            if !(x[i] <= *yi && *yi <= x[i + 1]) {
                return domain(format!("y_{} = {yi} is outside [{}, {}]", i + 1, x[i], x[i + 1]));
            }
        }
        Ok(Self { x, y, domain: family })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn domain(&self) -> Family {
        self.domain
    }
}

/// Checks that `x` is strictly increasing inside the family's interval.
pub(crate) fn check_outer(x: &[f64], family: Family) -> Result<()> {
    check_strict(x)?;
    let (lo, hi) = match family {
        Family::Laguerre => (0.0, f64::INFINITY),
        Family::Jacobi => (0.0, 1.0),
    };
    if x[0] < lo || x[x.len() - 1] > hi {
        return domain(format!("x leaves [{lo}, {hi}]"));
    }
    Ok(())
}

pub(crate) fn check_strict(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return domain("x needs at least two coordinates");
    }
    if x.iter().any(|v| !v.is_finite()) {
        return domain("x has non-finite coordinates");
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return domain("x must be strictly increasing");
    }
    Ok(())
}

/// Logarithm of the density, or a flag when it is infinite or zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogDensity {
    Finite(f64),
    /// A coincidence `y_i = x_j` with `θ < 1`.
    Infinite,
    /// The density vanishes (`y_i = y_j`, or `y_i = x_j` with `θ > 1`).
    Zero,
}

impl LogDensity {
    pub fn value(self) -> f64 {
        match self {
            LogDensity::Finite(v) => v,
            LogDensity::Infinite => f64::INFINITY,
            LogDensity::Zero => f64::NEG_INFINITY,
        }
    }
}

/// `log Γ(θ(n+1)) - (n+1) log Γ(θ) + (1-2θ) Σ_{i<j} log(x_j-x_i)`, the
/// `y`-independent part of the log density.
pub(crate) fn log_normalizer(x: &[f64], theta: f64) -> f64 {
    let np1 = x.len() as f64;
    let mut acc = ln_gamma_signed(theta * np1).0 - np1 * ln_gamma_signed(theta).0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc += (1.0 - 2.0 * theta) * (x[j] - x[i]).ln();
        }
    }
    acc
}

/// `log λ^θ_{n,n+1}(x, y)`.
pub fn da_log_density(pair: &InterlacingPair, theta: f64) -> Result<LogDensity> {
    if theta <= 0.0 {
        return domain(format!("theta = {theta} must be positive"));
    }
    let (x, y) = (pair.x(), pair.y());
    let mut acc = log_normalizer(x, theta);
    let mut touches = false;
    for yi in y {
        for xj in x {
            let gap = (yi - xj).abs();
            if gap == 0.0 {
                touches = true;
            } else {
                acc += (theta - 1.0) * gap.ln();
            }
        }
    }
    if touches && theta < 1.0 {
        return Ok(LogDensity::Infinite);
    }
    if touches && theta > 1.0 {
        return Ok(LogDensity::Zero);
    }
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            let gap = y[j] - y[i];
            if gap <= 0.0 {
                return Ok(LogDensity::Zero);
            }
            acc += gap.ln();
        }
    }
    Ok(LogDensity::Finite(acc))
}

pub(crate) fn vandermonde(v: &[f64]) -> f64 {
    let mut acc = 1.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            acc *= v[j] - v[i];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(x: &[f64], y: &[f64]) -> InterlacingPair {
        InterlacingPair::new(x.to_vec(), y.to_vec(), Family::Laguerre).unwrap()
    }

    #[test]
    fn uniform_at_theta_one() {
        for y in [0.1, 0.5, 0.93] {
            let v = da_log_density(&pair(&[0.0, 1.0], &[y]), 1.0).unwrap().value();
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn vandermonde_ratio_at_theta_one() {
        let x = [0.2, 0.9, 1.7, 3.0];
        let y = [0.5, 1.1, 2.2];
        let v = da_log_density(&pair(&x, &y), 1.0).unwrap().value();
        let want = (6.0 * vandermonde(&y) / vandermonde(&x)).ln();
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn boundary_flags() {
        let p = pair(&[0.0, 1.0, 2.0], &[0.0, 1.5]);
        assert_eq!(da_log_density(&p, 0.75).unwrap(), LogDensity::Infinite);
        assert_eq!(da_log_density(&p, 1.5).unwrap(), LogDensity::Zero);
        let tied = pair(&[0.0, 1.0, 2.0], &[1.0, 1.0]);
        assert_eq!(da_log_density(&tied, 1.0).unwrap(), LogDensity::Zero);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(InterlacingPair::new(vec![0.0, 1.0], vec![1.5], Family::Laguerre).is_err());
        assert!(InterlacingPair::new(vec![0.0, 0.0], vec![0.0], Family::Laguerre).is_err());
        assert!(InterlacingPair::new(vec![0.5, 1.5], vec![0.7], Family::Jacobi).is_err());
        assert!(InterlacingPair::new(vec![0.0, 1.0, 2.0], vec![0.5], Family::Laguerre).is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Laguerre,
    Jacobi,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Laguerre => "laguerre",
            Family::Jacobi => "jacobi",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "laguerre" | "besq" => Ok(Family::Laguerre),
            "jacobi" => Ok(Family::Jacobi),
            other => Err(Error::Config(format!("unknown family {other:?}"))),
        }
    }
}

/// Family-specific drift parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape<S> {
    Laguerre { d: S },
    Jacobi { a: S, b: S },
}

/// Particle count, `θ = β/2` and the drift parameters of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<S> {
    pub n: usize,
    pub theta: S,
    pub shape: Shape<S>,
}

impl<S: Scalar> ModelParams<S> {
    pub fn laguerre(n: usize, theta: S, d: S) -> Self {
        Self { n, theta, shape: Shape::Laguerre { d } }
    }

    pub fn jacobi(n: usize, theta: S, a: S, b: S) -> Self {
        Self { n, theta, shape: Shape::Jacobi { a, b } }
    }

    pub fn family(&self) -> Family {
        match self.shape {
            Shape::Laguerre { .. } => Family::Laguerre,
            Shape::Jacobi { .. } => Family::Jacobi,
        }
    }

    pub fn beta(&self) -> S {
        S::from_i64(2) * self.theta.clone()
    }

    /// Checks `n ≥ 1` and `θ > 0`.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return domain("n must be at least 1");
        }
        if self.theta <= S::zero() {
            return domain(format!("theta = {} must be positive", self.theta));
        }
        Ok(())
    }

    /// The intertwining hypotheses: `β ≥ 1`, and `d ≥ 2` or `a, b ≥ 1`.
    pub fn validate_intertwining(&self) -> Result<()> {
        self.validate()?;
        if self.beta() < S::one() {
            return domain(format!("beta = {} is below 1", self.beta()));
        }
        match &self.shape {
            Shape::Laguerre { d } if *d < S::from_i64(2) => domain(format!("d = {d} is below 2")),
            Shape::Jacobi { a, b } if *a < S::one() || *b < S::one() => {
                domain(format!("(a, b) = ({a}, {b}) must both be at least 1"))
            }
            _ => Ok(()),
        }
    }

    /// Parameters of the `n + 1` particle process in the intertwining:
    /// `d - 2`, or `(a - 1, b - 1)`.
    pub fn lifted(&self) -> Self {
        let shape = match &self.shape {
            Shape::Laguerre { d } => Shape::Laguerre { d: d.clone() - S::from_i64(2) },
            Shape::Jacobi { a, b } => Shape::Jacobi { a: a.clone() - S::one(), b: b.clone() - S::one() },
        };
        Self { n: self.n + 1, theta: self.theta.clone(), shape }
    }

    pub fn to_f64(&self) -> ModelParams<f64> {
        let shape = match &self.shape {
            Shape::Laguerre { d } => Shape::Laguerre { d: d.to_f64() },
            Shape::Jacobi { a, b } => Shape::Jacobi { a: a.to_f64(), b: b.to_f64() },
        };
        ModelParams { n: self.n, theta: self.theta.to_f64(), shape }
    }
}

impl<S: Scalar> fmt::Display for ModelParams<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Laguerre { d } => write!(f, "laguerre n={} theta={} d={}", self.n, self.theta, d),
            Shape::Jacobi { a, b } => {
                write!(f, "jacobi n={} theta={} a={} b={}", self.n, self.theta, a, b)
            }
        }
    }
}

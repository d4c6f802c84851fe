use crate::dixon_anderson::{check_strict, log_normalizer, vandermonde};
use crate::error::{domain, Error, Result};
use crate::quadrature::GaussJacobi;

/// Cap on tensor grid points per evaluation.
pub const DEFAULT_MAX_POINTS: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    /// `|I_m - I_{m/2}|` at the final node count.
    pub error: f64,
    pub nodes_per_axis: usize,
}

/// `(Λ f)(x) = ∫ λ^θ_{n,n+1}(x, y) f(y) dy` by tensor Gauss-Jacobi rules on
/// `Π [x_i, x_{i+1}]`, doubling the node count until successive values
/// differ by at most `tol · max(1, |I|)`.
pub fn da_integrate(x: &[f64], f: impl Fn(&[f64]) -> f64, theta: f64, tol: f64) -> Result<QuadEstimate> {
    check_strict(x)?;
    let n = x.len() - 1;
    if n > 3 {
        return domain(format!("tensor quadrature supports n ≤ 3, got {n}"));
    }
    if theta <= 0.0 {
        return domain(format!("theta = {theta} must be positive"));
    }
    let mut m = 8;
    let mut prev = tensor_rule(x, &f, theta, m)?;
    loop {
        let next_m = 2 * m;
        if next_m.pow(n as u32) > DEFAULT_MAX_POINTS {
            return Err(Error::Quadrature { requested: tol, achieved: f64::NAN });
        }
        let cur = tensor_rule(x, &f, theta, next_m)?;
        let err = (cur - prev).abs();
        m = next_m;
        if err <= tol * cur.abs().max(1.0) {
            return Ok(QuadEstimate { value: cur, error: err, nodes_per_axis: m });
        }
        if 2 * m > 512 || (2 * m).pow(n as u32) > DEFAULT_MAX_POINTS {
            return Err(Error::Quadrature { requested: tol, achieved: err });
        }
        prev = cur;
    }
}

fn tensor_rule(x: &[f64], f: &impl Fn(&[f64]) -> f64, theta: f64, m: usize) -> Result<f64> {
    let n = x.len() - 1;
    let rule = GaussJacobi::new(m, theta - 1.0, theta - 1.0)?;
    // per axis: nodes and weights with the smooth non-adjacent factors folded in
    let axes: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
        .map(|i| {
            let (nodes, mut weights) = rule.on_interval(x[i], x[i + 1]);
            for (y, w) in nodes.iter().zip(weights.iter_mut()) {
                for (j, xj) in x.iter().enumerate() {
                    if j != i && j != i + 1 {
                        *w *= (y - xj).abs().powf(theta - 1.0);
                    }
                }
            }
            (nodes, weights)
        })
        .collect();
    let norm = log_normalizer(x, theta).exp();
    let mut idx = vec![0usize; n];
    let mut y = vec![0.0; n];
    let mut acc = 0.0;
    loop {
        let mut w = 1.0;
        for i in 0..n {
            y[i] = axes[i].0[idx[i]];
            w *= axes[i].1[idx[i]];
        }
        acc += w * vandermonde(&y) * f(&y);
        let mut k = 0;
        loop {
            if k == n {
                return Ok(norm * acc);
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_mass_is_one() {
        for (x, theta) in [
            (vec![0.3, 1.4], 0.5),
            (vec![0.0, 0.2, 1.1], 1.0),
            (vec![0.1, 0.5, 0.6, 2.0], 2.0),
            (vec![0.1, 0.5, 0.6, 2.0], 0.5),
        ] {
            let q = da_integrate(&x, |_| 1.0, theta, 1e-9).unwrap();
            assert!((q.value - 1.0).abs() < 1e-8, "{x:?} {theta} {q:?}");
        }
    }

    #[test]
    fn uniform_average() {
        let q = da_integrate(&[0.0, 1.0], |y| y[0], 1.0, 1e-12).unwrap();
        assert!((q.value - 0.5).abs() < 1e-13);
    }

    #[test]
    fn refuses_large_n() {
        assert!(da_integrate(&[0.0, 1.0, 2.0, 3.0, 4.0], |_| 1.0, 1.0, 1e-6).is_err());
    }
}

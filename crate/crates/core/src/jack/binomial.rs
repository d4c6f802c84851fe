//! First-order generalized binomial coefficients `binom(λ, λ_(i))_θ`.
//!
//! They are the coefficients of `J_ρ(z)/J_ρ(1_n)`, `|ρ| = |λ| - 1`, in the
//! expansion of `J_λ(1_n + z)/J_λ(1_n)` and do not depend on `n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::jack::{JackEngine, Partition, SymmetricPoly};
use crate::scalar::Scalar;

impl<S: Scalar> JackEngine<S> {
    /// All coefficients `binom(λ, ρ)_θ` with `|ρ| = |λ| - 1`, computed in
    /// `n` auxiliary variables by shifting the exact expansion of `J_λ` and
    /// changing basis triangularly.
    pub fn degree_drop_binomials(&self, lambda: &Partition, n: usize) -> Result<BTreeMap<Partition, S>> {
        if lambda.is_empty() {
            return domain("binomial coefficients need a nonzero partition");
        }
        let j = self.expand(lambda, n)?;
        let shifted = j.to_poly().shift_by_ones().homogeneous_part(lambda.weight() - 1);
        let q = SymmetricPoly::from_poly(&shifted).scaled(&(S::one() / self.norm_at_ones(lambda, n)));
        let betas = self.decompose(&q)?;
        Ok(betas
            .into_iter()
            .map(|(rho, b)| {
                let v = b * self.norm_at_ones(&rho, n);
                (rho, v)
            })
            .collect())
    }

    /// `binom(λ, λ_(i))_θ` for `i = 1..=l` (entry `i - 1`), zero where
    /// `λ_(i)` is not a partition. Uses `l + 1` auxiliary variables.
    pub fn first_order_binomials(&self, lambda: &Partition) -> Result<Arc<Vec<S>>> {
        if let Some(b) = self.binomials.lock().unwrap().get(lambda) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.first_order_binomials_with_aux(lambda, lambda.len() + 1)?);
        self.binomials.lock().unwrap().insert(lambda.clone(), b.clone());
        Ok(b)
    }

    /// As [`Self::first_order_binomials`] with an explicit auxiliary
    /// variable count `n ≥ l`.
    pub fn first_order_binomials_with_aux(&self, lambda: &Partition, n: usize) -> Result<Vec<S>> {
        let all = self.degree_drop_binomials(lambda, n)?;
        Ok((1..=lambda.len())
            .map(|i| {
                lambda
                    .remove_box(i)
                    .and_then(|rho| all.get(&rho).cloned())
                    .unwrap_or_else(S::zero)
            })
            .collect())
    }
}

/// `binom(λ, λ_(i))_θ` for `i = 1..=l`.
pub fn first_order_binomials<S: Scalar>(lambda: &Partition, theta: S) -> Result<Vec<S>> {
    let engine = JackEngine::new(theta)?;
    Ok((*engine.first_order_binomials(lambda)?).clone())
}

/// Numerical route to the same coefficients: least-squares interpolation of
/// `J_λ(1_n + z)/J_λ(1_n)` over random sample points against every
/// `J_ρ(z)/J_ρ(1_n)` with `|ρ| ≤ |λ|`. Independent of the symbolic shift.
pub fn first_order_binomials_sampled<R: Rng>(
    lambda: &Partition,
    theta: f64,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if lambda.is_empty() {
        return domain("binomial coefficients need a nonzero partition");
    }
    let engine = JackEngine::new(theta)?;
    let basis = Partition::up_to_weight(lambda.weight(), n);
    let polys = basis
        .iter()
        .map(|rho| Ok(engine.expand(rho, n)?.to_poly()))
        .collect::<Result<Vec<_>>>()?;
    let norms: Vec<f64> = basis.iter().map(|rho| engine.norm_at_ones(rho, n)).collect();
    let target = engine.expand(lambda, n)?.to_poly();
    let target_norm = engine.norm_at_ones(lambda, n);
    let rows = 3 * basis.len();
    const ATTEMPTS: usize = 5;
    for _ in 0..ATTEMPTS {
        let mut a = DMatrix::<f64>::zeros(rows, basis.len());
        let mut b = DVector::<f64>::zeros(rows);
        for r in 0..rows {
            let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let shifted: Vec<f64> = z.iter().map(|v| 1.0 + v).collect();
            b[r] = target.eval_f64(&shifted) / target_norm;
            for (c, (p, nm)) in polys.iter().zip(&norms).enumerate() {
                a[(r, c)] = p.eval_f64(&z) / nm;
            }
        }
        let svd = a.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin <= 1e-12 * smax {
            continue;
        }
        let x = svd
            .solve(&b, 0.0)
            .map_err(|e| Error::Domain(format!("least squares failed: {e}")))?;
        return Ok((1..=lambda.len())
            .map(|i| match lambda.remove_box(i) {
                Some(rho) => x[basis.iter().position(|p| *p == rho).expect("in basis")],
                None => 0.0,
            })
            .collect());
    }
    Err(Error::SingularInterpolation { attempts: ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        assert_eq!(first_order_binomials(&part![1], 0.7).unwrap(), vec![1.0]);
        let b = first_order_binomials(&part![2, 2], Rational::from_ratio(1, 2)).unwrap();
        assert_eq!(b[0], Rational::from_i64(0));
        // binom((2), (1)) = 2 for every θ
        assert_eq!(first_order_binomials(&part![2], Rational::from_ratio(3, 4)).unwrap(), vec![Rational::from_i64(2)]);
        assert!(first_order_binomials(&part![], 1.0).is_err());
    }

    #[test]
    fn auxiliary_variable_count_is_irrelevant() {
        let e = JackEngine::new(1.0).unwrap();
        let a = e.first_order_binomials_with_aux(&part![2], 3).unwrap();
        let b = e.first_order_binomials_with_aux(&part![2], 5).unwrap();
        assert!((a[0] - b[0]).abs() < 1e-10);
        for theta in [0.5, 1.5] {
            let e = JackEngine::new(theta).unwrap();
            for lam in Partition::up_to_weight(5, 3).into_iter().skip(1) {
                let n = lam.len() + 1;
                let a = e.first_order_binomials_with_aux(&lam, n).unwrap();
                let b = e.first_order_binomials_with_aux(&lam, n + 2).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-10, "{lam} θ={theta}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn only_single_box_removals_appear() {
        let e = JackEngine::new(Rational::from_ratio(3, 4)).unwrap();
        for lam in Partition::up_to_weight(5, 4).into_iter().skip(1) {
            let all = e.degree_drop_binomials(&lam, lam.len() + 1).unwrap();
            for (rho, v) in all {
                let reachable = (1..=lam.len()).any(|i| lam.remove_box(i).as_ref() == Some(&rho));
                assert!(reachable || v == Rational::from_i64(0), "{lam} -> {rho}");
            }
        }
    }

    #[test]
    fn sampled_route_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for theta in [0.5, 1.0, 2.0] {
            let e = JackEngine::new(theta).unwrap();
            for lam in [part![1], part![2], part![2, 1], part![3, 1], part![2, 2]] {
                let n = lam.len() + 1;
                let sym = e.first_order_binomials(&lam).unwrap();
                let num = first_order_binomials_sampled(&lam, theta, n, &mut rng).unwrap();
                for (a, b) in sym.iter().zip(&num) {
                    assert!((a - b).abs() < 1e-8, "{lam} θ={theta}: {a} vs {b}");
                }
            }
        }
    }
}

//! Closed-form actions of `B1`, `B2`, `B3` on Jack polynomials against the
//! operators applied coefficient by coefficient.

use crate::error::Result;
use crate::jack::{apply_operator, JackEngine, Operator, Partition, SymmetricPoly};
use crate::scalar::Scalar;

/// Largest monomial coefficient of `B J_κ - (closed form)` over the three
/// operators and every `κ ⊆ top` with at most `n` parts.
pub fn operator_action_residual<S: Scalar>(top: &Partition, n: usize, theta: &S) -> Result<f64> {
    operator_action_mismatch(top, n, theta, theta)
}

/// As [`operator_action_residual`] with the closed forms evaluated at
/// `formula_theta`.
pub fn operator_action_mismatch<S: Scalar>(top: &Partition, n: usize, theta: &S, formula_theta: &S) -> Result<f64> {
    let engine = JackEngine::new(theta.clone())?;
    let formula = JackEngine::new(formula_theta.clone())?;
    let mut worst = 0.0f64;
    for kappa in Partition::down_set(top).into_iter().filter(|k| k.len() <= n) {
        let j = engine.expand(&kappa, n)?;
        let (b1, b2) = predicted_first_order(&formula, &kappa, n)?;
        let b3 = j.scaled(&S::from_i64(kappa.weight() as i64));
        for (op, want) in [(Operator::B1, b1), (Operator::B2, b2), (Operator::B3, b3)] {
            worst = worst.max(apply_operator(op, &j, theta).max_abs_diff(&want));
        }
    }
    Ok(worst)
}

/// `B1 J_κ` and `B2 J_κ` from the binomial expansion.
fn predicted_first_order<S: Scalar>(
    engine: &JackEngine<S>,
    kappa: &Partition,
    n: usize,
) -> Result<(SymmetricPoly<S>, SymmetricPoly<S>)> {
    let mut b1 = SymmetricPoly::zero(n);
    let mut b2 = SymmetricPoly::zero(n);
    if kappa.is_empty() {
        return Ok((b1, b2));
    }
    let theta = engine.theta().clone();
    let binoms = engine.first_order_binomials(kappa)?;
    let top_norm = engine.norm_at_ones(kappa, n);
    for (idx, binom) in binoms.iter().enumerate() {
        let i = idx + 1;
        let Some(rho) = kappa.remove_box(i) else { continue };
        if binom.is_zero() {
            continue;
        }
        let coef = top_norm.clone() * binom.clone() / engine.norm_at_ones(&rho, n);
        let jr = engine.expand(&rho, n)?;
        b1 = b1.add(&jr.scaled(&coef));
        let shift = S::from_i64(kappa.part(i) as i64 - 1) + S::from_i64((n - i) as i64) * theta.clone();
        b2 = b2.add(&jr.scaled(&(coef * shift)));
    }
    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::Rational;

    #[test]
    fn exact_for_small_tops() {
        for theta in [Rational::from_ratio(1, 2), Rational::from_ratio(3, 2)] {
            for n in 1..=3 {
                assert_eq!(operator_action_residual(&part![3, 1], n, &theta).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn wrong_shift_is_detected() {
        // B2 with (n - i)θ replaced by (n - i + 1)θ must not match
        let theta = 0.5;
        let engine = JackEngine::new(theta).unwrap();
        let kappa = part![2, 1];
        let j = engine.expand(&kappa, 3).unwrap();
        let (_, b2) = predicted_first_order(&engine, &kappa, 3).unwrap();
        let shifted = b2.add(&apply_operator(Operator::B1, &j, &theta).scaled(&theta));
        assert!(apply_operator(Operator::B2, &j, &theta).max_abs_diff(&shifted) > 1e-3);
        assert!(operator_action_mismatch(&kappa, 3, &0.5, &0.6).unwrap() > 1e-3);
    }
}

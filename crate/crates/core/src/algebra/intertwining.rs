//! Intertwining of the `n` and `n + 1` particle generators through the
//! Dixon-Anderson kernel, at generator and semigroup level.
//!
//! With `M1` the kernel matrix, `M2` the `n`-level generator and `M3` the
//! `(n+1)`-level generator at lifted parameters, the identities are
//! `M3 M1 = M1 M2` and `e^{tM3} M1 = M1 e^{tM2}` for the operators acting on
//! Jack coefficient vectors.

use crate::algebra::{
    exp_nilpotent, expm_lower_triangular, generator_on_basis, kernel_on_basis, GeneratorMatrix, Matrix,
    ModelParams, PartitionBasis,
};
use crate::error::{domain, Error, Result};
use crate::jack::{apply_operator, JackEngine, Operator, Partition, SymmetricPoly};
use crate::scalar::Scalar;
use crate::special::GammaProduct;

/// `e^{tM}`. Nilpotent generators are summed exactly; otherwise the
/// `f64` Padé route is used, which exact scalars refuse.
pub fn semigroup_matrix<S: Scalar>(gen: &GeneratorMatrix<S>, t: &S) -> Result<GeneratorMatrix<S>> {
    if *t < S::zero() {
        return domain(format!("t = {t} is negative"));
    }
    if !gen.entries.is_lower_triangular() {
        return domain("semigroup needs a lower-triangular generator");
    }
    let entries = if gen.entries.is_strictly_lower_triangular() {
        exp_nilpotent(&gen.entries, t)
    } else if S::EXACT {
        return Err(Error::Inexact("exponential of a generator with nonzero diagonal".into()));
    } else {
        let e = expm_lower_triangular(&gen.entries.to_f64().scale(&t.to_f64()));
        let mut out = Matrix::zeros(e.dim());
        for i in 0..e.dim() {
            for j in 0..=i {
                out[(i, j)] = S::from_f64(e[(i, j)]);
            }
        }
        out
    };
    Ok(GeneratorMatrix { entries, ..gen.clone() })
}

/// The three matrices of the intertwining on the basis under `top`.
#[derive(Debug, Clone)]
pub struct IntertwiningTriple<S> {
    pub kernel: GeneratorMatrix<S>,
    pub lower: GeneratorMatrix<S>,
    pub upper: GeneratorMatrix<S>,
}

impl<S: Scalar> IntertwiningTriple<S> {
    /// `lower` uses `params`, `upper` uses `upper_params` (normally
    /// `params.lifted()`; anything else gives a control).
    pub fn build(top: &Partition, params: &ModelParams<S>, upper_params: &ModelParams<S>) -> Result<Self> {
        if upper_params.n != params.n + 1 || upper_params.family() != params.family() {
            return domain("upper level must be the same family with n + 1 particles");
        }
        let engine = JackEngine::new(params.theta.clone())?;
        let basis = PartitionBasis::new(top, params.n)?;
        Ok(Self {
            kernel: kernel_on_basis(&basis, params.n, &params.theta),
            lower: generator_on_basis(&engine, &basis, params)?,
            upper: generator_on_basis(&engine, &basis, upper_params)?,
        })
    }

    /// `max |M3 M1 - M1 M2|`.
    pub fn generator_residual(&self) -> f64 {
        commutation_residual(&self.upper.operator(), &self.kernel.operator(), &self.lower.operator())
    }

    /// `max |e^{tM3} M1 - M1 e^{tM2}|`.
    pub fn semigroup_residual(&self, t: &S) -> Result<f64> {
        let up = semigroup_matrix(&self.upper, t)?;
        let low = semigroup_matrix(&self.lower, t)?;
        Ok(commutation_residual(&up.operator(), &self.kernel.operator(), &low.operator()))
    }
}

fn commutation_residual<S: Scalar>(upper: &Matrix<S>, kernel: &Matrix<S>, lower: &Matrix<S>) -> f64 {
    upper.mul(kernel).sub(&kernel.mul(lower)).max_abs()
}

/// Residual of the generator intertwining. Needs β ≥ 1, and d ≥ 2 or
/// a, b ≥ 1 so that the lifted model is valid.
pub fn check_generator_intertwining<S: Scalar>(top: &Partition, params: &ModelParams<S>) -> Result<f64> {
    params.validate_intertwining()?;
    Ok(IntertwiningTriple::build(top, params, &params.lifted())?.generator_residual())
}

/// Residual of the semigroup intertwining at time `t`.
pub fn check_semigroup_intertwining<S: Scalar>(top: &Partition, params: &ModelParams<S>, t: &S) -> Result<f64> {
    params.validate_intertwining()?;
    IntertwiningTriple::build(top, params, &params.lifted())?.semigroup_residual(t)
}

/// `E_x[J_top(X_t)]`: the top row of `e^{tM}` against `(J_ν(x))_ν`.
pub fn exact_moment<S: Scalar>(x: &[S], top: &Partition, params: &ModelParams<S>, t: &S) -> Result<S> {
    if x.len() != params.n {
        return Err(Error::DimensionMismatch { expected: params.n, got: x.len() });
    }
    if x.windows(2).any(|w| w[0] > w[1]) {
        return domain("x must be ordered increasingly");
    }
    let engine = JackEngine::new(params.theta.clone())?;
    let basis = PartitionBasis::new(top, params.n)?;
    let gen = generator_on_basis(&engine, &basis, params)?;
    let e = semigroup_matrix(&gen, t)?;
    let row = e.entries.row(basis.top_position());
    let mut acc = S::zero();
    for (coef, nu) in row.iter().zip(basis.members()) {
        if !coef.is_zero() {
            acc = acc + coef.clone() * engine.eval(nu, x)?;
        }
    }
    Ok(acc)
}

/// `max` coefficient of `(B1 B2 - B2 B1) p - Dyson p` over `polys`.
pub fn check_dyson_commutator<S: Scalar>(theta: &S, polys: &[SymmetricPoly<S>]) -> f64 {
    polys
        .iter()
        .map(|p| {
            let b1b2 = apply_operator(Operator::B1, &apply_operator(Operator::B2, p, theta), theta);
            let b2b1 = apply_operator(Operator::B2, &apply_operator(Operator::B1, p, theta), theta);
            b1b2.sub(&b2b1).max_abs_diff(&apply_operator(Operator::Dyson, p, theta))
        })
        .fold(0.0, f64::max)
}

/// `J_λ(1_n)/J_{λ_(i)}(1_n) = θ^{-1} Γ((n+1-i)θ + λ_i) / Γ((n+1-i)θ + λ_i - 1)`.
pub fn norm_ratio_gamma(lambda: &Partition, i: usize, n: usize, theta: f64) -> f64 {
    let x = (n + 1 - i) as f64 * theta + lambda.part(i) as f64;
    GammaProduct::new().times_gamma(x).over_gamma(x - 1.0).value() / theta
}

/// `c(λ_(i), n, θ) / c(λ, n, θ)` in Gamma form.
pub fn kernel_ratio_gamma(lambda: &Partition, i: usize, n: usize, theta: f64) -> f64 {
    let li = lambda.part(i) as f64;
    let lo = (n + 1 - i) as f64 * theta + li;
    let hi = (n + 2 - i) as f64 * theta + li;
    GammaProduct::new()
        .times_gamma(lo - 1.0)
        .times_gamma(hi)
        .over_gamma(lo)
        .over_gamma(hi - 1.0)
        .value()
}

/// `J_λ(1_n) c(λ_(i)) J_{λ_(i)}(1_{n+1}) / [J_{λ_(i)}(1_n) c(λ) J_λ(1_{n+1})]`,
/// each factor from its own Gamma product. Equal to one.
pub fn box_removal_identity(lambda: &Partition, i: usize, n: usize, theta: f64) -> Result<f64> {
    use crate::jack::{jack_norm_at_ones_gamma as norm, kernel_eigenvalue_gamma as c};
    let Some(rho) = lambda.remove_box(i) else {
        return domain(format!("removing a box from row {i} of {lambda} leaves no partition"));
    };
    if lambda.len() > n {
        return domain(format!("{lambda} does not fit in {n} variables"));
    }
    Ok(norm(lambda, n, theta) * c(&rho, n, theta) * norm(&rho, n + 1, theta)
        / (norm(&rho, n, theta) * c(lambda, n, theta) * norm(lambda, n + 1, theta)))
}

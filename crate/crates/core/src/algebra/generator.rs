//! Generators and the Dixon-Anderson kernel as matrices on Jack-basis
//! truncations.
//!
//! Matrices are stored in source-row layout: row `κ` holds the Jack
//! coefficients of `L J_κ`, so entry `(κ, ν)` is nonzero only for `ν = κ` or
//! `ν = κ_(i)` and every generator is lower triangular. The operator acting on
//! coefficient vectors is the transpose, see [`GeneratorMatrix::operator`].

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, ModelParams, PartitionBasis, Shape};
use crate::error::{domain, Result};
use crate::jack::{JackEngine, Partition};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    Laguerre,
    Jacobi,
    DysonCommutator,
    Kernel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix<S> {
    pub basis: PartitionBasis,
    pub nvars: usize,
    pub entries: Matrix<S>,
    pub kind: MatrixKind,
}

impl<S: Scalar> GeneratorMatrix<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Entry `(κ, ν)`, zero when either partition is outside the basis.
    pub fn entry(&self, kappa: &Partition, nu: &Partition) -> S {
        match (self.basis.position(kappa), self.basis.position(nu)) {
            (Some(i), Some(j)) => self.entries[(i, j)].clone(),
            _ => S::zero(),
        }
    }

    /// The matrix acting on Jack coefficient vectors (column layout).
    pub fn operator(&self) -> Matrix<S> {
        self.entries.transpose()
    }

    /// Coefficients of `L p` for `p = Σ v_κ J_κ`.
    pub fn apply_to_coefficients(&self, v: &[S]) -> Vec<S> {
        self.operator().mul_vec(v)
    }

    pub fn is_generator_shaped(&self) -> bool {
        self.entries.is_lower_triangular()
    }
}

/// `J_κ(1_n) / J_{κ_(i)}(1_n) = θ^{-1} ((n + 1 - i)θ + κ_i - 1)`.
pub(crate) fn box_ratio<S: Scalar>(kappa: &Partition, i: usize, n: usize, theta: &S) -> S {
    let top = S::from_i64((n + 1 - i) as i64) * theta.clone() + S::from_i64(kappa.part(i) as i64 - 1);
    top / theta.clone()
}

/// `θ`-dependent factor `κ_i - 1 + (n - i)θ` of the `B2` action.
fn b2_factor<S: Scalar>(kappa: &Partition, i: usize, n: usize, theta: &S) -> S {
    S::from_i64(kappa.part(i) as i64 - 1) + S::from_i64((n - i) as i64) * theta.clone()
}

fn check_top(top: &Partition, n: usize) -> Result<()> {
    if top.len() > n {
        return domain(format!("{top} has more than n = {n} parts"));
    }
    Ok(())
}

/// Builds the generator of `params` on an existing basis. The basis may
/// have been built for fewer variables than `params.n`.
pub fn generator_on_basis<S: Scalar>(
    engine: &JackEngine<S>,
    basis: &PartitionBasis,
    params: &ModelParams<S>,
) -> Result<GeneratorMatrix<S>> {
    params.validate()?;
    check_top(basis.top(), params.n)?;
    let n = params.n;
    let theta = engine.theta().clone();
    if theta != params.theta {
        return domain(format!("engine theta {theta} differs from params theta {}", params.theta));
    }
    let two = S::from_i64(2);
    let mut m = Matrix::zeros(basis.len());
    for (row, kappa) in basis.members().iter().enumerate() {
        if kappa.is_empty() {
            continue;
        }
        let binoms = engine.first_order_binomials(kappa)?;
        for i in 1..=kappa.len() {
            let Some(rho) = kappa.remove_box(i) else { continue };
            let col = basis.position(&rho).expect("basis is closed under box removal");
            let drift = match &params.shape {
                Shape::Laguerre { d } => theta.clone() * d.clone(),
                Shape::Jacobi { a, .. } => two.clone() * theta.clone() * a.clone(),
            };
            let coeff = two.clone() * b2_factor(kappa, i, n, &theta) + drift;
            m[(row, col)] = coeff * binoms[i - 1].clone() * box_ratio(kappa, i, n, &theta);
        }
        if let Shape::Jacobi { a, b } = &params.shape {
            let eval = engine.eval_eigenvalue(kappa, n)?;
            let w = S::from_i64(kappa.weight() as i64);
            m[(row, row)] =
                -(two.clone() * eval) - two.clone() * theta.clone() * (a.clone() + b.clone()) * w;
        }
    }
    let kind = match params.family() {
        crate::algebra::Family::Laguerre => MatrixKind::Laguerre,
        crate::algebra::Family::Jacobi => MatrixKind::Jacobi,
    };
    Ok(GeneratorMatrix { basis: basis.clone(), nvars: n, entries: m, kind })
}

/// `L^(n)_{d,θ} = 2 B2 + θ d B1` on the Jack polynomials `J_κ`, `κ ⊆ top`.
pub fn laguerre_generator_matrix<S: Scalar>(top: &Partition, params: &ModelParams<S>) -> Result<GeneratorMatrix<S>> {
    if params.family() != crate::algebra::Family::Laguerre {
        return domain("expected Laguerre parameters");
    }
    build(top, params)
}

/// `A^(n)_{a,b,θ} = 2 B2 - 2 D + 2θa B1 - 2θ(a+b) B3` on `J_κ`, `κ ⊆ top`.
pub fn jacobi_generator_matrix<S: Scalar>(top: &Partition, params: &ModelParams<S>) -> Result<GeneratorMatrix<S>> {
    if params.family() != crate::algebra::Family::Jacobi {
        return domain("expected Jacobi parameters");
    }
    build(top, params)
}

fn build<S: Scalar>(top: &Partition, params: &ModelParams<S>) -> Result<GeneratorMatrix<S>> {
    let engine = JackEngine::new(params.theta.clone())?;
    let basis = PartitionBasis::new(top, params.n)?;
    generator_on_basis(&engine, &basis, params)
}

/// Diagonal matrix of kernel eigenvalues `c(κ, n, θ)`.
pub fn kernel_matrix<S: Scalar>(top: &Partition, n: usize, theta: &S) -> Result<GeneratorMatrix<S>> {
    let basis = PartitionBasis::new(top, n)?;
    Ok(kernel_on_basis(&basis, n, theta))
}

pub fn kernel_on_basis<S: Scalar>(basis: &PartitionBasis, n: usize, theta: &S) -> GeneratorMatrix<S> {
    let diag = basis
        .members()
        .iter()
        .map(|k| crate::jack::kernel_eigenvalue(k, n, theta))
        .collect();
    GeneratorMatrix { basis: basis.clone(), nvars: n, entries: Matrix::diagonal(diag), kind: MatrixKind::Kernel }
}

/// `B1` and `B2` as source-row matrices.
fn first_order_pair<S: Scalar>(
    engine: &JackEngine<S>,
    basis: &PartitionBasis,
    n: usize,
) -> Result<(Matrix<S>, Matrix<S>)> {
    let theta = engine.theta().clone();
    let mut b1 = Matrix::zeros(basis.len());
    let mut b2 = Matrix::zeros(basis.len());
    for (row, kappa) in basis.members().iter().enumerate() {
        if kappa.is_empty() {
            continue;
        }
        let binoms = engine.first_order_binomials(kappa)?;
        for i in 1..=kappa.len() {
            let Some(rho) = kappa.remove_box(i) else { continue };
            let col = basis.position(&rho).expect("basis is closed under box removal");
            let v = binoms[i - 1].clone() * box_ratio(kappa, i, n, &theta);
            b2[(row, col)] = v.clone() * b2_factor(kappa, i, n, &theta);
            b1[(row, col)] = v;
        }
    }
    Ok((b1, b2))
}

/// `[B1, B2] = B1 B2 - B2 B1`, which equals the Dyson generator.
pub fn dyson_commutator_matrix<S: Scalar>(top: &Partition, n: usize, theta: &S) -> Result<GeneratorMatrix<S>> {
    check_top(top, n)?;
    let engine = JackEngine::new(theta.clone())?;
    let basis = PartitionBasis::new(top, n)?;
    let (b1, b2) = first_order_pair(&engine, &basis, n)?;
    // composition A∘B has source-row matrix M_B · M_A
    let entries = b2.mul(&b1).sub(&b1.mul(&b2));
    Ok(GeneratorMatrix { basis, nvars: n, entries, kind: MatrixKind::DysonCommutator })
}

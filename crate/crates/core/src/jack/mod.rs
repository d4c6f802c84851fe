//! Partitions, symmetric polynomials and Jack polynomials `J_λ(z; θ)`.

mod binomial;
mod expand;
pub mod golden;
mod ops;
mod partition;
mod poly;

pub use binomial::{first_order_binomials, first_order_binomials_sampled};
pub use expand::{
    eval_eigenvalue, jack_eval, jack_expand, jack_norm_at_ones, jack_norm_at_ones_gamma,
    kernel_eigenvalue, kernel_eigenvalue_gamma, JackEngine, JackIndex, RESONANCE_THRESHOLD,
};
pub use ops::{apply_operator, apply_to_poly, Operator};
pub use partition::Partition;
pub use poly::{monomial_count_at_ones, Poly, SymmetricPoly};

/// `λ'`.
pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// `B(λ) = Σ (i-1) λ_i`.
pub fn b_stat(lambda: &Partition) -> u64 {
    lambda.b_stat()
}

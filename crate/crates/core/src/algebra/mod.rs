//! Generators, kernel and semigroups as matrices on Jack-basis truncations.

mod actions;
mod basis;
mod expm;
mod generator;
mod intertwining;
mod matrix;
mod params;

pub use actions::{operator_action_mismatch, operator_action_residual};
pub use basis::PartitionBasis;
pub use expm::{exp_nilpotent, expm_lower_triangular};
pub use generator::{
    dyson_commutator_matrix, generator_on_basis, jacobi_generator_matrix, kernel_matrix, kernel_on_basis,
    laguerre_generator_matrix, GeneratorMatrix, MatrixKind,
};
pub use intertwining::{
    box_removal_identity, check_dyson_commutator, check_generator_intertwining, check_semigroup_intertwining,
    exact_moment, kernel_ratio_gamma, norm_ratio_gamma, semigroup_matrix, IntertwiningTriple,
};
pub use matrix::Matrix;
pub use params::{Family, ModelParams, Shape};

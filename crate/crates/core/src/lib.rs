pub mod algebra;
pub mod diffusion;
pub mod dixon_anderson;
pub mod ensemble;
pub mod error;
pub mod harness;
pub mod jack;
pub mod parallel;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use jack::Partition;
pub use scalar::{Rational, Scalar};

mod algebraic;
mod ensemble;
mod kernel;
mod sde;

use crate::harness::{Item, RunConfig, Suite};
use crate::scalar::{Rational, Scalar};

pub(crate) fn items(suite: Suite, config: &RunConfig) -> Vec<Item<'_>> {
    match suite {
        Suite::Generator => algebraic::generator_items(config),
        Suite::Semigroup => algebraic::semigroup_items(config),
        Suite::Kernel => kernel::items(config),
        Suite::Sde => sde::items(config),
        Suite::Ensemble => ensemble::items(config),
        Suite::All => Vec::new(),
    }
}

/// The rational a short decimal literal denotes (`0.1` is `1/10`).
pub(crate) fn exact(v: f64) -> Rational {
    Rational::parse_decimal(&v.to_string()).unwrap_or_else(|| Rational::from_f64(v))
}

/// The shift applied in control mode, zero otherwise.
pub(crate) fn shift(config: &RunConfig, amount: f64) -> f64 {
    if config.control {
        amount
    } else {
        0.0
    }
}

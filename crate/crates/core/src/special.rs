//! Gamma-function helpers in log space.

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}

/// Accumulates a product of Gamma values `Π Γ(num_k) / Π Γ(den_k)` in log
/// space, tracking the sign separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaProduct {
    log_abs: f64,
    sign: f64,
}

impl Default for GammaProduct {
    fn default() -> Self {
        Self { log_abs: 0.0, sign: 1.0 }
    }
}

impl GammaProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn times_gamma(mut self, x: f64) -> Self {
        let (l, s) = ln_gamma_signed(x);
        self.log_abs += l;
        self.sign *= s;
        self
    }

    pub fn over_gamma(mut self, x: f64) -> Self {
        let (l, s) = ln_gamma_signed(x);
        self.log_abs -= l;
        self.sign *= s;
        self
    }

    pub fn times(mut self, x: f64) -> Self {
        self.log_abs += x.abs().ln();
        self.sign *= x.signum();
        self
    }

    pub fn ln_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_product_matches_factorials() {
        // Γ(6)/Γ(3) = 5!/2! = 60
        let v = GammaProduct::new().times_gamma(6.0).over_gamma(3.0).value();
        assert!((v - 60.0).abs() < 1e-12);
        // Γ(-0.5) = -2 sqrt(pi)
        let g = GammaProduct::new().times_gamma(-0.5).value();
        assert!((g + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}

//! Coefficient fields used by the symbolic layers.
//!
//! Everything in [`crate::jack`] and [`crate::algebra`] is generic over
//! [`Scalar`], so the same code runs in double precision for the numeric
//! pipeline and in exact rational arithmetic for golden values and
//! identities that should hold with zero residual.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// A field of coefficients: `f64` or [`Rational`].
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// Converts from `f64`; exact for the rational field (binary value).
    fn from_f64(v: f64) -> Self;

    /// Parses a decimal literal such as `0.75`, `-3`, `5.5e-1` or `3/4`.
    ///
    /// The rational implementation is exact in the decimal digits given.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Rising factorial `x (x+1) ... (x+k-1)`, i.e. `Γ(x+k)/Γ(x)`.
    fn rising(&self, k: u32) -> Self;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn powi(&self, k: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * self.clone();
        }
        if k < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            return Some(p / q);
        }
        s.parse().ok()
    }

    /// Evaluated in log space so that large arguments do not overflow.
    fn rising(&self, k: u32) -> Self {
        if k == 0 {
            return 1.0;
        }
        let (la, sa) = crate::special::ln_gamma_signed(*self + k as f64);
        let (lb, sb) = crate::special::ln_gamma_signed(*self);
        sa * sb * (la - lb).exp()
    }

    fn powi(&self, k: i32) -> Self {
        f64::powi(*self, k)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // numer/denom may individually overflow f64
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(p), Some(q)) if p.is_finite() && q.is_finite() => p / q,
            _ => {
                let bits = self.numer().bits().max(self.denom().bits()) as i64;
                let shift = (bits - 900).max(0) as usize;
                let p = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let q = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                p / q
            }
        }
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite value")
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(BigRational::new(p, q));
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
            None => (s, 0),
        };
        let (neg, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let mut r = BigRational::from_integer(all);
        if scale >= 0 {
            r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        Some(if neg { -r } else { r })
    }

    fn rising(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut x = self.clone();
        for _ in 0..k {
            acc *= x.clone();
            x += Self::one();
        }
        acc
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&Signed::abs(self))
    }
}

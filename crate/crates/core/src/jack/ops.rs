//! Exact symbolic action of the differential operators on symmetric
//! polynomials.
//!
//! With `∂_i = ∂/∂z_i` and sums over `1 ≤ i ≠ j ≤ n`:
//!
//! * `B1 = Σ ∂_i`
//! * `B2 = Σ z_i ∂_i² + 2θ Σ z_i/(z_i - z_j) ∂_i`
//! * `B3 = Σ z_i ∂_i`
//! * `D  = Σ z_i² ∂_i² + 2θ Σ z_i²/(z_i - z_j) ∂_i`
//! * `Dyson = Σ ∂_i² + 2θ Σ 1/(z_i - z_j) ∂_i`
//!
//! The singular sums are evaluated pairwise: for symmetric `p` the numerator
//! `z_i^k ∂_i p - z_j^k ∂_j p` is antisymmetric in `(i, j)` and therefore
//! divisible by `z_i - z_j`, so the quotient is computed exactly as a
//! polynomial.

use serde::{Deserialize, Serialize};

use crate::jack::{Poly, SymmetricPoly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operator {
    B1,
    B2,
    B3,
    D,
    Dyson,
}

/// Applies `which` to a symmetric polynomial. `theta` is unused by `B1` and
/// `B3`.
pub fn apply_operator<S: Scalar>(which: Operator, poly: &SymmetricPoly<S>, theta: &S) -> SymmetricPoly<S> {
    SymmetricPoly::from_poly(&apply_to_poly(which, &poly.to_poly(), theta))
}

/// Applies `which` to a polynomial given in the full monomial basis. The
/// input must be symmetric for the singular parts to be exact.
pub fn apply_to_poly<S: Scalar>(which: Operator, p: &Poly<S>, theta: &S) -> Poly<S> {
    let two_theta = S::from_i64(2) * theta.clone();
    match which {
        Operator::B1 => {
            let mut out = Poly::zero(p.nvars());
            for i in 0..p.nvars() {
                out.add_assign(&p.partial(i));
            }
            out
        }
        Operator::B3 => {
            let mut out = Poly::zero(p.nvars());
            for (e, c) in p.terms() {
                let deg: u32 = e.iter().sum();
                out.add_term(e.to_vec(), c.clone() * S::from_i64(deg as i64));
            }
            out
        }
        Operator::B2 => {
            let mut out = second_order(p, 1);
            out.add_assign(&singular_sum(p, 1).scaled(&two_theta));
            out
        }
        Operator::D => {
            let mut out = second_order(p, 2);
            out.add_assign(&singular_sum(p, 2).scaled(&two_theta));
            out
        }
        Operator::Dyson => {
            let mut out = second_order(p, 0);
            out.add_assign(&singular_sum(p, 0).scaled(&two_theta));
            out
        }
    }
}

/// `Σ_i z_i^k ∂_i² p`
fn second_order<S: Scalar>(p: &Poly<S>, k: u32) -> Poly<S> {
    let mut out = Poly::zero(p.nvars());
    for i in 0..p.nvars() {
        out.add_assign(&p.partial(i).partial(i).times_var_power(i, k));
    }
    out
}

/// `Σ_{i≠j} z_i^k/(z_i - z_j) ∂_i p`
fn singular_sum<S: Scalar>(p: &Poly<S>, k: u32) -> Poly<S> {
    let n = p.nvars();
    let half = S::from_ratio(1, 2);
    let mut out = Poly::zero(n);
    let derivs: Vec<Poly<S>> = (0..n).map(|i| p.partial(i).times_var_power(i, k)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut num = derivs[i].clone();
            num.add_assign(&derivs[j].scaled(&-S::one()));
            // canonical representatives with e_i > e_j
            let mut canon: Vec<Vec<u32>> = num
                .terms()
                .filter(|(e, _)| e[i] != e[j])
                .map(|(e, _)| {
                    let mut e = e.to_vec();
                    if e[i] < e[j] {
                        e.swap(i, j);
                    }
                    e
                })
                .collect();
            canon.sort_unstable();
            canon.dedup();
            for e in canon {
                let mut f = e.clone();
                f.swap(i, j);
                let anti = (num.coeff(&e) - num.coeff(&f)) * half.clone();
                if anti.is_zero() {
                    continue;
                }
                // (z_i^a z_j^b - z_i^b z_j^a)/(z_i - z_j) = (z_i z_j)^b Σ_m z_i^m z_j^{a-b-1-m}
                let (a, b) = (e[i], e[j]);
                for m in 0..a - b {
                    let mut g = e.clone();
                    g[i] = b + m;
                    g[j] = b + (a - b - 1 - m);
                    out.add_term(g, anti.clone());
                }
            }
        }
    }
    out
}

//! Construction of `J_λ(z; θ)` in the monomial basis.
//!
//! `J_λ` is the symmetric eigenfunction of `D` with eigenvalue
//! `eval(λ, n, θ) = 2B(λ') - 2θB(λ) + 2θ(n-1)|λ|` whose monomial expansion
//! only involves `m_μ` with `μ` dominated by `λ`, scaled so that
//! `J_λ(1_n) = θ^{-|λ|} Π_i Γ((n+1-i)θ + λ_i) / Γ((n+1-i)θ)`.
//! Since `D` is triangular on monomials with respect to dominance, the
//! coefficients follow from a single back-substitution.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{domain, Error, Result};
use crate::jack::ops::{apply_operator, Operator};
use crate::jack::poly::monomial_count_at_ones;
use crate::jack::{Partition, SymmetricPoly};
use crate::scalar::Scalar;
use crate::special::GammaProduct;

/// Default guard on `|eval(λ) - eval(μ)|` in the triangular solve.
pub const RESONANCE_THRESHOLD: f64 = 1e-9;

/// Identifies `J_λ(·; θ)` in `nvars` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JackIndex<S> {
    pub lambda: Partition,
    pub nvars: usize,
    pub theta: S,
}

impl<S: Scalar> JackIndex<S> {
    pub fn new(lambda: Partition, nvars: usize, theta: S) -> Result<Self> {
        if nvars == 0 {
            return domain("at least one variable is required");
        }
        if lambda.len() > nvars {
            return domain(format!("{lambda} has more than {nvars} parts"));
        }
        if theta <= S::zero() {
            return domain(format!("theta = {theta} must be positive"));
        }
        Ok(Self { lambda, nvars, theta })
    }
}

/// `eval(λ, n, θ)`, the eigenvalue of `D` on `J_λ`.
pub fn eval_eigenvalue<S: Scalar>(lambda: &Partition, n: usize, theta: &S) -> Result<S> {
    if n < lambda.len() {
        return domain(format!("eval({lambda}, n = {n}): n is below the length"));
    }
    let two = S::from_i64(2);
    let b_conj = S::from_i64(lambda.conjugate().b_stat() as i64);
    let b = S::from_i64(lambda.b_stat() as i64);
    let w = S::from_i64(lambda.weight() as i64);
    let nm1 = S::from_i64(n as i64 - 1);
    Ok(two.clone() * b_conj - two.clone() * theta.clone() * b + two * theta.clone() * nm1 * w)
}

/// `J_λ(1_n; θ)` as a product of rising factorials (log-gamma in `f64`).
pub fn jack_norm_at_ones<S: Scalar>(idx: &JackIndex<S>) -> S {
    norm_at_ones(&idx.lambda, idx.nvars, &idx.theta)
}

pub(crate) fn norm_at_ones<S: Scalar>(lambda: &Partition, n: usize, theta: &S) -> S {
    let mut acc = theta.powi(-(lambda.weight() as i32));
    for (i, &li) in lambda.parts().iter().enumerate() {
        let base = S::from_i64((n - i) as i64) * theta.clone();
        acc = acc * base.rising(li);
    }
    acc
}

/// `c(λ, n, θ)`, the eigenvalue of the Dixon-Anderson kernel on `J_λ`,
/// written as `Π_{i ≤ n} ((n+1-i)θ)_{λ_i} / ((n+2-i)θ)_{λ_i}` after
/// telescoping the leading Gamma ratio.
pub fn kernel_eigenvalue<S: Scalar>(lambda: &Partition, n: usize, theta: &S) -> S {
    let mut acc = S::one();
    for i in 1..=n {
        let li = lambda.part(i);
        if li == 0 {
            break;
        }
        let lo = S::from_i64((n + 1 - i) as i64) * theta.clone();
        let hi = S::from_i64((n + 2 - i) as i64) * theta.clone();
        acc = acc * lo.rising(li) / hi.rising(li);
    }
    acc
}

/// `c(λ, n, θ)` straight from its Gamma-function form, in log space.
pub fn kernel_eigenvalue_gamma(lambda: &Partition, n: usize, theta: f64) -> f64 {
    let mut g = GammaProduct::new()
        .times_gamma((n as f64 + 1.0) * theta)
        .over_gamma(theta);
    for i in 1..=n {
        let li = lambda.part(i) as f64;
        g = g
            .times_gamma((n + 1 - i) as f64 * theta + li)
            .over_gamma((n + 2 - i) as f64 * theta + li);
    }
    g.value()
}

/// `J_λ(1_n; θ)` straight from its Gamma-function form, in log space.
pub fn jack_norm_at_ones_gamma(lambda: &Partition, n: usize, theta: f64) -> f64 {
    let mut g = GammaProduct::new();
    for (i, &li) in lambda.parts().iter().enumerate() {
        let base = (n - i) as f64 * theta;
        g = g.times_gamma(base + li as f64).over_gamma(base);
    }
    g.value() * theta.powi(-(lambda.weight() as i32))
}

type ExpansionKey = (Partition, usize);

/// Memoizing builder for Jack polynomials and first-order binomial
/// coefficients at a fixed `θ`. Safe to share between threads.
#[derive(Debug)]
pub struct JackEngine<S: Scalar> {
    theta: S,
    resonance_threshold: f64,
    expansions: Mutex<HashMap<ExpansionKey, Arc<SymmetricPoly<S>>>>,
    d_on_monomials: Mutex<HashMap<(u32, usize), Arc<BTreeMap<Partition, SymmetricPoly<S>>>>>,
    pub(crate) binomials: Mutex<HashMap<Partition, Arc<Vec<S>>>>,
}

impl<S: Scalar> JackEngine<S> {
    pub fn new(theta: S) -> Result<Self> {
        if theta <= S::zero() {
            return domain(format!("theta = {theta} must be positive"));
        }
        Ok(Self {
            theta,
            resonance_threshold: RESONANCE_THRESHOLD,
            expansions: Mutex::default(),
            d_on_monomials: Mutex::default(),
            binomials: Mutex::default(),
        })
    }

    pub fn with_resonance_threshold(mut self, threshold: f64) -> Self {
        self.resonance_threshold = threshold;
        self
    }

    pub fn theta(&self) -> &S {
        &self.theta
    }

    pub fn eval_eigenvalue(&self, lambda: &Partition, n: usize) -> Result<S> {
        eval_eigenvalue(lambda, n, &self.theta)
    }

    pub fn norm_at_ones(&self, lambda: &Partition, n: usize) -> S {
        norm_at_ones(lambda, n, &self.theta)
    }

    pub fn kernel_eigenvalue(&self, lambda: &Partition, n: usize) -> S {
        kernel_eigenvalue(lambda, n, &self.theta)
    }

    /// `D` applied to every `m_μ` with `|μ| = weight` in `n` variables.
    fn d_matrix(&self, weight: u32, n: usize) -> Arc<BTreeMap<Partition, SymmetricPoly<S>>> {
        if let Some(m) = self.d_on_monomials.lock().unwrap().get(&(weight, n)) {
            return m.clone();
        }
        let table: BTreeMap<_, _> = Partition::all_of_weight(weight, n)
            .into_iter()
            .map(|mu| {
                let m = SymmetricPoly::monomial(mu.clone(), n).expect("length checked");
                (mu, apply_operator(Operator::D, &m, &self.theta))
            })
            .collect();
        let table = Arc::new(table);
        self.d_on_monomials.lock().unwrap().insert((weight, n), table.clone());
        table
    }

    /// Monomial expansion of `J_λ` in `n` variables.
    pub fn expand(&self, lambda: &Partition, n: usize) -> Result<Arc<SymmetricPoly<S>>> {
        if n == 0 || lambda.len() > n {
            return domain(format!("cannot build J_{lambda} in {n} variables"));
        }
        let key = (lambda.clone(), n);
        if let Some(j) = self.expansions.lock().unwrap().get(&key) {
            return Ok(j.clone());
        }
        let target = self.eval_eigenvalue(lambda, n)?;
        let d = self.d_matrix(lambda.weight(), n);
        let support: Vec<Partition> = Partition::all_of_weight(lambda.weight(), n)
            .into_iter()
            .filter(|mu| lambda.dominates(mu))
            .collect();
        let mut coeffs: Vec<(Partition, S)> = Vec::with_capacity(support.len());
        for nu in &support {
            if nu == lambda {
                coeffs.push((nu.clone(), S::one()));
                continue;
            }
            let mut rhs = S::zero();
            for (mu, u) in &coeffs {
                rhs = rhs + u.clone() * d[mu].coeff(nu);
            }
            let gap = target.clone() - d[nu].coeff(nu);
            if gap.abs_f64() < self.resonance_threshold {
                return Err(Error::Resonance {
                    lambda: lambda.to_string(),
                    mu: nu.to_string(),
                    gap: gap.abs_f64(),
                });
            }
            coeffs.push((nu.clone(), rhs / gap));
        }
        let mut at_ones = S::zero();
        for (mu, u) in &coeffs {
            at_ones = at_ones + u.clone() * S::from_i64(monomial_count_at_ones(mu, n) as i64);
        }
        let scale = self.norm_at_ones(lambda, n) / at_ones;
        let mut j = SymmetricPoly::zero(n);
        for (mu, u) in coeffs {
            j.add_term(mu, u * scale.clone());
        }
        let j = Arc::new(j);
        self.expansions.lock().unwrap().insert(key, j.clone());
        Ok(j)
    }

    /// `J_λ(z; θ)`.
    pub fn eval(&self, lambda: &Partition, z: &[S]) -> Result<S> {
        self.expand(lambda, z.len())?.eval(z)
    }

    /// Coefficients `β_ρ` with `p = Σ_ρ β_ρ J_ρ`, by peeling off leading
    /// monomials in basis order (heaviest weight, dominance-maximal first).
    pub fn decompose(&self, p: &SymmetricPoly<S>) -> Result<BTreeMap<Partition, S>> {
        let n = p.nvars();
        let mut rest = p.clone();
        let mut out = BTreeMap::new();
        let Some(top) = p.degree() else {
            return Ok(out);
        };
        for w in (0..=top).rev() {
            for rho in Partition::all_of_weight(w, n) {
                let c = rest.coeff(&rho);
                if c.is_zero() {
                    continue;
                }
                let j = self.expand(&rho, n)?;
                let beta = c / j.coeff(&rho);
                rest = rest.sub(&j.scaled(&beta));
                // the leading coefficient cancels exactly in exact arithmetic
                rest.add_term(rho.clone(), -rest.coeff(&rho));
                out.insert(rho, beta);
            }
        }
        Ok(out)
    }
}

/// `J_λ` in the monomial basis.
pub fn jack_expand<S: Scalar>(idx: &JackIndex<S>) -> Result<SymmetricPoly<S>> {
    let engine = JackEngine::new(idx.theta.clone())?;
    Ok((*engine.expand(&idx.lambda, idx.nvars)?).clone())
}

/// `J_λ(z; θ)`; `z` must have `nvars` coordinates.
pub fn jack_eval<S: Scalar>(idx: &JackIndex<S>, z: &[S]) -> Result<S> {
    if z.len() != idx.nvars {
        return Err(Error::DimensionMismatch { expected: idx.nvars, got: z.len() });
    }
    jack_expand(idx)?.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::Rational;

    fn q(p: i64, r: i64) -> Rational {
        Rational::from_ratio(p, r)
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eval_eigenvalue(&part![], 3, &0.7).unwrap(), 0.0);
        assert_eq!(eval_eigenvalue(&part![1], 2, &1.0).unwrap(), 2.0);
        let lam = part![2, 1];
        let d = eval_eigenvalue(&lam, 4, &0.5).unwrap() - eval_eigenvalue(&lam, 3, &0.5).unwrap();
        assert_eq!(d, 3.0);
        assert!(eval_eigenvalue(&part![1, 1, 1], 2, &1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        let one = JackIndex::new(part![], 3, 0.4).unwrap();
        assert_eq!(jack_norm_at_ones(&one), 1.0);
        for n in 1..5 {
            let idx = JackIndex::new(part![1], n, q(3, 4)).unwrap();
            assert_eq!(jack_norm_at_ones(&idx), Rational::from_i64(n as i64));
        }
        let idx = JackIndex::new(part![2], 1, 1.0).unwrap();
        assert!((jack_norm_at_ones(&idx) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn norm_routes_agree() {
        for lam in Partition::up_to_weight(6, 4) {
            for theta in [0.5, 0.75, 1.0, 2.0] {
                let exact = norm_at_ones(&lam, 4, &Rational::parse_decimal(&theta.to_string()).unwrap());
                let g = jack_norm_at_ones_gamma(&lam, 4, theta);
                assert!((exact.to_f64() - g).abs() <= 1e-12 * g.abs(), "{lam} {theta}");
            }
        }
    }

    #[test]
    fn kernel_eigenvalue_examples() {
        assert_eq!(kernel_eigenvalue(&part![], 3, &q(1, 2)), Rational::from_i64(1));
        assert_eq!(kernel_eigenvalue(&part![1], 1, &q(1, 1)), q(1, 2));
        assert_eq!(kernel_eigenvalue(&part![1], 2, &q(1, 1)), q(2, 3));
        for lam in Partition::up_to_weight(5, 3) {
            let a = kernel_eigenvalue(&lam, 3, &0.75);
            let b = kernel_eigenvalue_gamma(&lam, 3, 0.75);
            assert!((a - b).abs() < 1e-13, "{lam}");
        }
    }

    #[test]
    fn small_expansions() {
        let e = JackEngine::new(q(1, 1)).unwrap();
        assert_eq!(*e.expand(&part![], 2).unwrap(), SymmetricPoly::constant(2, Rational::from_i64(1)));
        let j1 = e.expand(&part![1], 3).unwrap();
        assert_eq!(j1.coeff(&part![1]), Rational::from_i64(1));
        assert_eq!(j1.len(), 1);
        let j2 = e.expand(&part![2], 1).unwrap();
        assert_eq!(j2.coeff(&part![2]), Rational::from_i64(2));
        assert!(e.expand(&part![1, 1], 1).is_err());
    }

    /// Two-part oracle: J_(2) = (1 + 1/θ) m_2 + 2 m_11.
    #[test]
    fn weight_two_closed_form() {
        for (p, r) in [(1, 2), (3, 4), (1, 1), (2, 1)] {
            let theta = q(p, r);
            let e = JackEngine::new(theta.clone()).unwrap();
            for n in 2..5 {
                let j = e.expand(&part![2], n).unwrap();
                assert_eq!(j.coeff(&part![2]), Rational::from_i64(1) + Rational::from_i64(1) / theta.clone());
                assert_eq!(j.coeff(&part![1, 1]), Rational::from_i64(2));
                let j11 = e.expand(&part![1, 1], n).unwrap();
                assert_eq!(j11.coeff(&part![1, 1]), Rational::from_i64(2));
                assert_eq!(j11.len(), 1);
            }
        }
    }

    #[test]
    fn coefficient_of_m_one_k_is_factorial() {
        let e = JackEngine::new(q(3, 4)).unwrap();
        for w in 1..=5u32 {
            let fact: i64 = (1..=w as i64).product();
            for lam in Partition::all_of_weight(w, w as usize) {
                let j = e.expand(&lam, w as usize).unwrap();
                let ones = Partition::new(vec![1; w as usize]).unwrap();
                assert_eq!(j.coeff(&ones), Rational::from_i64(fact), "{lam}");
            }
        }
    }

    #[test]
    fn dimension_mismatch_in_eval() {
        let idx = JackIndex::new(part![1], 2, 0.5).unwrap();
        assert!(matches!(jack_eval(&idx, &[1.0]), Err(Error::DimensionMismatch { .. })));
        assert_eq!(jack_eval(&idx, &[2.0, 3.0]).unwrap(), 5.0);
    }

    #[test]
    fn decompose_recovers_jack_coefficients() {
        let e = JackEngine::new(q(1, 2)).unwrap();
        let mut p = e.expand(&part![2, 1], 3).unwrap().scaled(&q(3, 1));
        p = p.add(&e.expand(&part![1], 3).unwrap().scaled(&q(-1, 2)));
        let d = e.decompose(&p).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&part![2, 1]], q(3, 1));
        assert_eq!(d[&part![1]], q(-1, 2));
    }
}

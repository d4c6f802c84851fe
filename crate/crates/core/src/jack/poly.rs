//! Polynomial carriers: dense-exponent polynomials in `n` variables and
//! symmetric polynomials in the monomial basis `m_μ`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jack::Partition;
use crate::scalar::Scalar;

/// A polynomial in `nvars` variables, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &S)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms.get(exps).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c · z^exps`, dropping exact zeros.
    pub fn add_term(&mut self, exps: Vec<u32>, c: S) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scaled(&self, k: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c.clone() * S::from_i64(e[i] as i64));
            }
        }
        out
    }

    /// Multiplies by `z_i^k`.
    pub fn times_var_power(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[i] += k;
            out.add_term(f, c.clone());
        }
        out
    }

    /// Total degree of the highest term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == degree {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// The polynomial `z ↦ p(1_n + z)`, expanded binomially.
    pub fn shift_by_ones(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            // Π_i (1 + z_i)^{e_i}
            let mut partial: Vec<(Vec<u32>, S)> = vec![(vec![0; self.nvars], c.clone())];
            for (i, &ei) in e.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (ei as usize + 1));
                for (f, v) in &partial {
                    for k in 0..=ei {
                        let mut g = f.clone();
                        g[i] = k;
                        next.push((g, v.clone() * S::from_i64(binomial(ei, k) as i64)));
                    }
                }
                partial = next;
            }
            for (f, v) in partial {
                out.add_term(f, v);
            }
        }
        out
    }

    pub fn eval(&self, z: &[S]) -> Result<S> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: z.len() });
        }
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &k) in z.iter().zip(e) {
                t = t * zi.powi(k as i32);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(S::abs_f64).fold(0.0, f64::max)
    }

    /// Checks invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                (self.coeff(&f) - c.clone()).abs_f64() <= tol
            })
        })
    }
}

impl Poly<f64> {
    /// Fast evaluation for hot loops.
    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        debug_assert_eq!(z.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(z).fold(*c, |t, (&k, &zi)| t * zi.powi(k as i32))
            })
            .sum()
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Iterates the distinct permutations of `v` (sorted ascending first).
pub(crate) fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// A symmetric polynomial `Σ_μ c_μ m_μ(z_1, ..., z_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPoly<S> {
    nvars: usize,
    terms: BTreeMap<Partition, S>,
}

impl<S: Scalar> SymmetricPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Partition::empty(), c);
        p
    }

    /// The monomial symmetric polynomial `m_μ`.
    pub fn monomial(mu: Partition, nvars: usize) -> Result<Self> {
        let mut p = Self::zero(nvars);
        if mu.len() > nvars {
            return Err(Error::Domain(format!("m_{mu} needs at least {} variables", mu.len())));
        }
        p.add_term(mu, S::one());
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mu: &Partition) -> S {
        self.terms.get(mu).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c · m_μ`. Partitions longer than `nvars` vanish identically and
    /// are dropped.
    pub fn add_term(&mut self, mu: Partition, c: S) {
        if c.is_zero() || mu.len() > self.nvars {
            return;
        }
        let entry = self.terms.entry(mu).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, k: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-S::one()))
    }

    /// Expands each `m_μ` into its distinct monomials.
    pub fn to_poly(&self) -> Poly<S> {
        let mut out = Poly::zero(self.nvars);
        for (mu, c) in &self.terms {
            for e in distinct_permutations(&mu.padded(self.nvars)) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Reads off the `m_μ` coefficients of a polynomial that is assumed
    /// symmetric (only weakly decreasing exponent vectors are consulted).
    pub fn from_poly(p: &Poly<S>) -> Self {
        let mut out = Self::zero(p.nvars());
        for (e, c) in p.terms() {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                let mu = Partition::new(e.to_vec()).expect("decreasing exponents");
                out.add_term(mu, c.clone());
            }
        }
        out
    }

    pub fn eval(&self, z: &[S]) -> Result<S> {
        self.to_poly().eval(z)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (mu, c) in &self.terms {
            if mu.weight() == degree {
                out.add_term(mu.clone(), c.clone());
            }
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// Maximum coefficientwise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).terms.values().map(S::abs_f64).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(S::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> SymmetricPoly<f64> {
        SymmetricPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.to_f64())).collect(),
        }
    }
}

/// `m_μ(1_n)`: the number of distinct permutations of `μ` padded to `n`.
pub fn monomial_count_at_ones(mu: &Partition, n: usize) -> u64 {
    if mu.len() > n {
        return 0;
    }
    let mut count: u64 = 1;
    let mut remaining = n as u32;
    let mut mults = mu.multiplicities();
    mults.push((n - mu.len()) as u32);
    for m in mults {
        count *= binomial(remaining, m);
        remaining -= m;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::Rational;

    #[test]
    fn distinct_permutation_counts() {
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1]).len(), 1);
        assert_eq!(monomial_count_at_ones(&part![2, 1], 3), 6);
        assert_eq!(monomial_count_at_ones(&part![1, 1], 3), 3);
        assert_eq!(monomial_count_at_ones(&part![1, 1, 1, 1], 3), 0);
        assert_eq!(monomial_count_at_ones(&part![], 4), 1);
    }

    #[test]
    fn monomial_round_trip_and_eval() {
        let m = SymmetricPoly::<f64>::monomial(part![2, 1], 2).unwrap();
        let p = m.to_poly();
        assert!(p.is_symmetric(0.0));
        // z1^2 z2 + z1 z2^2 at (2,3)
        assert_eq!(p.eval(&[2.0, 3.0]).unwrap(), 12.0 + 18.0);
        assert_eq!(SymmetricPoly::from_poly(&p), m);
        assert!(m.eval(&[1.0]).is_err());
    }

    #[test]
    fn shift_by_ones_matches_direct_evaluation() {
        let mut p = Poly::<Rational>::zero(2);
        p.add_term(vec![2, 1], Rational::from_i64(3));
        p.add_term(vec![0, 1], Rational::from_i64(-1));
        let q = p.shift_by_ones();
        let z = [Rational::from_ratio(1, 3), Rational::from_ratio(-2, 5)];
        let shifted: Vec<_> = z.iter().map(|v| v.clone() + Rational::from_i64(1)).collect();
        assert_eq!(q.eval(&z).unwrap(), p.eval(&shifted).unwrap());
    }
}

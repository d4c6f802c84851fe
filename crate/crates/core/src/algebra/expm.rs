//! Matrix exponentials of triangular generators.

use crate::algebra::Matrix;
use crate::scalar::Scalar;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `e^A` for lower-triangular `A` by [13/13] Padé scaling and squaring.
///
/// The denominator is inverted by forward substitution and the diagonal is
/// reset to `exp(a_ii · 2^{k-s})` after every squaring.
pub fn expm_lower_triangular(a: &Matrix<f64>) -> Matrix<f64> {
    debug_assert!(a.is_lower_triangular());
    let n = a.dim();
    if n == 0 {
        return a.clone();
    }
    let norm = a.norm1();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(s);
    let a = a.scale(&scale);
    let ident = Matrix::<f64>::identity(n);
    let a2 = a.mul(&a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let b = &PADE13;
    let comb = |m6: f64, m4: f64, m2: f64| a6.scale(&m6).add(&a4.scale(&m4)).add(&a2.scale(&m2));
    let u_inner = a6.mul(&comb(b[13], b[11], b[9])).add(&comb(b[7], b[5], b[3])).add(&ident.scale(&b[1]));
    let u = a.mul(&u_inner);
    let v = a6.mul(&comb(b[12], b[10], b[8])).add(&comb(b[6], b[4], b[2])).add(&ident.scale(&b[0]));
    let mut r = v.sub(&u).solve_lower(&v.add(&u));
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    for (i, d) in diag.iter().enumerate() {
        r[(i, i)] = d.exp();
    }
    for k in 1..=s {
        r = r.mul(&r);
        let factor = 2f64.powi(k);
        for (i, d) in diag.iter().enumerate() {
            r[(i, i)] = (d * factor).exp();
        }
    }
    r
}

/// `e^{tA}` for strictly lower-triangular (nilpotent) `A`, as the finite
/// Taylor sum. Exact in rational arithmetic.
pub fn exp_nilpotent<S: Scalar>(a: &Matrix<S>, t: &S) -> Matrix<S> {
    debug_assert!(a.is_strictly_lower_triangular());
    let ta = a.scale(t);
    let mut term = Matrix::identity(a.dim());
    let mut acc = term.clone();
    for k in 1..a.dim().max(1) {
        term = term.mul(&ta).scale(&(S::one() / S::from_i64(k as i64)));
        if term.max_abs() == 0.0 {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn lower(entries: &[&[f64]]) -> Matrix<f64> {
        let mut m = Matrix::zeros(entries.len());
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[0,0],[c,-r]]: e^{tA} = [[1,0],[c(1-e^{-rt})/r, e^{-rt}]]
        let (c, r, t) = (4.0, 8.0, 0.37);
        let e = expm_lower_triangular(&lower(&[&[0.0], &[c, -r]]).scale(&t));
        assert!((e[(1, 0)] - c * (1.0 - (-r * t).exp()) / r).abs() < 1e-15);
        assert!((e[(1, 1)] - (-r * t).exp()).abs() < 1e-16);
        assert_eq!(e[(0, 1)], 0.0);
    }

    #[test]
    fn agrees_with_nalgebra_on_random_triangular() {
        let m = lower(&[&[-1.0], &[3.0, -20.0], &[0.5, 7.0, -2.0], &[2.0, -1.0, 40.0, -35.0]]);
        for t in [0.01, 0.3, 1.0, 5.0] {
            let ours = expm_lower_triangular(&m.scale(&t));
            let na = nalgebra::DMatrix::from_fn(4, 4, |i, j| m[(i, j)] * t).exp();
            for i in 0..4 {
                for j in 0..4 {
                    let scale = 1.0 + na[(i, j)].abs();
                    assert!((ours[(i, j)] - na[(i, j)]).abs() < 1e-12 * scale, "t={t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn nilpotent_series_matches_pade() {
        let m = lower(&[&[0.0], &[3.0, 0.0], &[1.0, 2.0, 0.0]]);
        let pade = expm_lower_triangular(&m.scale(&0.7));
        let series = exp_nilpotent(&m, &0.7);
        assert!(pade.sub(&series).max_abs() < 1e-14);
        let mq = Matrix::<Rational>::zeros(3);
        assert_eq!(exp_nilpotent(&mq, &Rational::from_i64(2)), Matrix::identity(3));
    }
}

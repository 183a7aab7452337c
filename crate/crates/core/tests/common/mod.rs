//! Brute-force oracles shared by the integration tests. They avoid the
//! library's multinomial bookkeeping: `Q^n` is summed over all `d^n` words.
#![allow(dead_code)]

use isotuple::{Matrix, OperatorTuple, Rational, Scalar};
use num::{One, Zero};

pub fn shift_pair<S: Scalar>() -> OperatorTuple<S> {
    OperatorTuple::new(vec![
        Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]).unwrap(),
        Matrix::identity(2),
    ])
    .unwrap()
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn mat_vec(m: &Matrix<Rational>, x: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    (0..n).map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + m.get(i, j) * &x[j])).collect()
}

pub fn sq_norm(x: &[Rational]) -> Rational {
    x.iter().fold(Rational::zero(), |acc, v| acc + v * v)
}

/// `Σ_{w ∈ [d]^n} ‖T_{w_1}⋯T_{w_n} x‖²`, which equals `Q^n` for commuting tuples.
pub fn q_words(t: &OperatorTuple<Rational>, x: &[Rational], n: usize) -> Rational {
    let mut layer = vec![x.to_vec()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|v| t.matrices().iter().map(move |m| mat_vec(m, v)))
            .collect();
    }
    layer.iter().map(|v| sq_norm(v)).fold(Rational::zero(), |a, b| a + b)
}

pub fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `Σ_k (−1)^{ℓ−k} C(ℓ,k) Q^k` from the word oracle.
pub fn p_words(t: &OperatorTuple<Rational>, x: &[Rational], ell: usize) -> Rational {
    (0..=ell).fold(Rational::zero(), |acc, k| {
        let c = int(binom(ell, k)) * q_words(t, x, k);
        if (ell - k).is_multiple_of(2) {
            acc + c
        } else {
            acc - c
        }
    })
}

/// All `‖T^α x‖₂` with `|α| ≤ k`, by walking words (repeats are harmless).
pub fn orbit_norms_by_order(t: &OperatorTuple<f64>, x: &[f64], k: usize) -> Vec<Vec<f64>> {
    let mut layer = vec![x.to_vec()];
    let mut out = Vec::new();
    for order in 0..=k {
        out.push(layer.iter().map(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt()).collect());
        if order < k {
            layer = layer
                .iter()
                .flat_map(|v| t.matrices().iter().map(move |m| m.mul_vec(v).unwrap()))
                .collect();
        }
    }
    out
}

pub fn identity_rational(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
}

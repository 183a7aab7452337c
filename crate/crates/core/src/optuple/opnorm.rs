use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::space::{self, NormSpec, Scalar};

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITERS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormBound {
    /// Closed form (`q = 1`) or converged power iteration (`q = 2`).
    Exact,
    /// Maximum over sphere samples; the true norm may be larger.
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorNorm {
    pub value: f64,
    pub bound: NormBound,
}

/// `ℓ^q → ℓ^q` operator norm of a square matrix.
pub fn operator_norm<S: Scalar>(
    m: &Matrix<S>,
    spec: &NormSpec,
    samples: usize,
    seed: u64,
) -> OperatorNorm {
    let a = m.to_float();
    if a.is_zero() {
        return OperatorNorm { value: 0.0, bound: NormBound::Exact };
    }
    if spec.q == 1.0 {
        let value = (0..a.cols())
            .map(|j| (0..a.rows()).map(|i| a.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        return OperatorNorm { value, bound: NormBound::Exact };
    }
    if spec.q == 2.0 {
        return OperatorNorm { value: spectral_norm(&a, seed), bound: NormBound::Exact };
    }
    let spec = NormSpec { dim: a.cols(), ..*spec };
    let value = space::sample_unit_sphere(seed, samples.max(1), &spec)
        .iter()
        .map(|x| space::norm(&a.mul_vec(x).expect("square"), &spec))
        .fold(0.0, f64::max);
    OperatorNorm { value, bound: NormBound::LowerBound }
}

/// Largest singular value by power iteration on `AᵀA`.
///
/// Runs from the all-ones vector and from a seeded Gaussian start and keeps
/// the larger Rayleigh quotient, so one unlucky start orthogonal to the top
/// singular vector does not matter.
pub fn spectral_norm(a: &Matrix<f64>, seed: u64) -> f64 {
    let ata = a.transpose().mul(a).expect("conformable");
    let n = ata.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = [
        vec![1.0; n],
        (0..n).map(|_| StandardNormal.sample(&mut rng)).collect::<Vec<f64>>(),
    ];
    starts.into_iter().map(|v| power_iterate(&ata, v)).fold(0.0, f64::max).sqrt()
}

fn power_iterate(ata: &Matrix<f64>, mut v: Vec<f64>) -> f64 {
    let unit = |v: &mut Vec<f64>| {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|c| *c /= norm);
        }
        norm
    };
    if unit(&mut v) == 0.0 {
        return 0.0;
    }
    let mut lambda = 0.0f64;
    for iter in 0..POWER_MAX_ITERS {
        let mut w = ata.mul_vec(&v).expect("square");
        let next: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        if unit(&mut w) == 0.0 {
            return lambda.max(0.0);
        }
        v = w;
        let converged = iter > 2 && (next - lambda).abs() <= POWER_TOL * next.abs();
        lambda = next;
        if converged {
            break;
        }
    }
    lambda.max(0.0)
}

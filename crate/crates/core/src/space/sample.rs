use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{float_norm_power, NormSpec, Rational, Scalar};

/// Deterministic points on the unit `ℓ^q` sphere.
///
/// The sequence starts with `e_1, …, e_n`, then every normalised `±1` sign
/// pattern (pattern `k` flips coordinate `i` when bit `i` of `k` is set),
/// then normalised Gaussian directions drawn from a ChaCha stream keyed by
/// `seed`. The prefix is truncated when `count` is smaller.
pub fn sample_unit_sphere(seed: u64, count: usize, spec: &NormSpec) -> Vec<Vec<f64>> {
    let n = spec.dim;
    let mut out = Vec::with_capacity(count);
    for v in prefix(n, count) {
        let unit = normalise(v.into_iter().map(|s| s as f64).collect(), spec.q);
        out.push(unit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        if v.iter().all(|c| *c == 0.0) {
            continue;
        }
        out.push(normalise(v, spec.q));
    }
    out
}

/// Exact-arithmetic counterpart of [`sample_unit_sphere`]: the same basis and
/// sign-pattern prefix, left unnormalised, followed by random integer vectors
/// with entries in `[-4, 4]`. All identities checked on these vectors are
/// homogeneous, so normalisation is unnecessary.
pub fn sample_rational_directions(seed: u64, count: usize, dim: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = prefix(dim, count)
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_i64).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-4..=4)).collect();
        if v.iter().all(|c| *c == 0) {
            continue;
        }
        out.push(v.into_iter().map(Rational::from_i64).collect());
    }
    out
}

fn prefix(n: usize, count: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n.min(count) {
        let mut e = vec![0; n];
        e[i] = 1;
        out.push(e);
    }
    let patterns: u128 = if n >= 127 { u128::MAX } else { 1u128 << n };
    let mut k: u128 = 0;
    while out.len() < count && k < patterns {
        out.push(
            (0..n)
                .map(|i| if i < 128 && (k >> i) & 1 == 1 { -1 } else { 1 })
                .collect(),
        );
        k += 1;
    }
    out
}

fn normalise(mut v: Vec<f64>, q: f64) -> Vec<f64> {
    let norm = float_norm_power(v.iter().copied(), 1.0, q);
    for c in v.iter_mut() {
        *c /= norm;
    }
    v
}

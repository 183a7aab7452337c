//! Example and counterexample tuples.
//!
//! All generators are deterministic functions of their arguments and seed,
//! and produce exact rational tuples.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkers::{check_minf, check_mp_defect, CheckReport, SampleConfig};
use crate::error::{Error, Result};
use crate::optuple::{Matrix, OperatorTuple};
use crate::space::{small_rational, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Isometry,
    Nilpotent,
    PaperStructure,
    Random,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Isometry => "isometry",
            Family::Nilpotent => "nilpotent",
            Family::PaperStructure => "paper-structure",
            Family::Random => "random",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isometry" => Ok(Family::Isometry),
            "nilpotent" => Ok(Family::Nilpotent),
            "paper-structure" => Ok(Family::PaperStructure),
            "random" => Ok(Family::Random),
            _ => Err(Error::Parameter(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::InvalidDimension("n and d must be >= 1".into()));
        }
        if self.m == 0 {
            return Err(Error::Parameter("m must be >= 1".into()));
        }
        match self.family {
            Family::Nilpotent if self.m > self.n => {
                Err(Error::Parameter(format!("nilpotent order m = {} exceeds n = {}", self.m, self.n)))
            }
            Family::Isometry | Family::Nilpotent if self.d != 1 => {
                Err(Error::Parameter(format!("the {} family produces single operators (d = 1)", self.family)))
            }
            Family::PaperStructure if self.d < 2 => Err(Error::Construction("paper-structure needs d >= 2".into())),
            Family::PaperStructure if self.m >= 2 && self.n < self.m => Err(Error::Construction(format!(
                "a nilpotent of order {} does not fit in dimension {}",
                self.m, self.n
            ))),
            _ => Ok(()),
        }
    }
}

/// A pseudorandom signed permutation matrix; isometric in every `ℓ^q`.
pub fn gen_isometry(n: usize, seed: u64) -> Result<Matrix<Rational>> {
    if n == 0 {
        return Err(Error::InvalidDimension("n must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(signed_permutation(n, &mut rng))
}

fn signed_permutation(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a = Matrix::zeros(n, n);
    for (col, &row) in perm.iter().enumerate() {
        a.set(row, col, Rational::from_i64(if rng.random_bool(0.5) { -1 } else { 1 }));
    }
    a
}

/// Block sizes of a nilpotent of order exactly `m` on `n` coordinates: one
/// block of size `m`, the rest filled with seeded sizes in `1..=m`.
fn nilpotent_blocks(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut blocks = vec![m];
    let mut left = n - m;
    while left > 0 {
        let b = rng.random_range(1..=m.min(left));
        blocks.push(b);
        left -= b;
    }
    blocks
}

/// Writes upshift blocks `N[i][i+1] = 1` of the given sizes along the
/// diagonal starting at `offset`.
fn place_shifts(a: &mut Matrix<Rational>, offset: usize, blocks: &[usize]) {
    let mut at = offset;
    for &b in blocks {
        for i in 0..b.saturating_sub(1) {
            a.set(at + i, at + i + 1, Rational::from_i64(1));
        }
        at += b;
    }
}

/// A nilpotent `N` with `N^m = 0 ≠ N^{m−1}`, built from raw shift blocks.
pub fn gen_nilpotent(n: usize, m: usize, seed: u64) -> Result<Matrix<Rational>> {
    if n == 0 {
        return Err(Error::InvalidDimension("n must be >= 1".into()));
    }
    if m == 0 || m > n {
        return Err(Error::Parameter(format!("nilpotent order must lie in 1..={n}, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Matrix::zeros(n, n);
    place_shifts(&mut a, 0, &nilpotent_blocks(n, m, &mut rng));
    Ok(a)
}

/// Output of [`gen_paper_structure`]: the tuple and the orders it is
/// guaranteed to satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct Structured {
    pub tuple: OperatorTuple<Rational>,
    /// The isometric direction.
    pub j0: usize,
    /// `(m', p)`-isometric for every `p`.
    pub m: usize,
    /// `(μ', ∞)`-isometric.
    pub mu: usize,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    /// Nilpotent direction owning the block, or `None` for a free coordinate.
    owner: Option<usize>,
    size: usize,
}

/// One isometric direction `T_{j0}` and `d − 1` nilpotents of order at most
/// `m` with pairwise vanishing products.
///
/// The space splits into blocks. Each nilpotent direction acts as an upshift
/// on its own blocks and as zero elsewhere, so `T_kT_l = 0` for distinct
/// nilpotent directions. `T_{j0}` maps each block onto a block with the same
/// owner and size, times a sign, and permutes the free coordinates with
/// signs; this commutes with every shift. Then
/// `Q^n(x) = ‖x‖^p + Σ_k Σ_{1≤r<ν_k} C(n,r) ‖T_k^r x‖^p`, a polynomial of
/// degree below the largest block size, and every `T_k` is a contraction, so
/// the tuple is `(1,∞)`-isometric.
pub fn gen_paper_structure(n: usize, d: usize, m: usize, seed: u64) -> Result<Structured> {
    GeneratorSpec { family: Family::PaperStructure, n, d, m, seed }.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j0 = rng.random_range(0..d);
    let nil: Vec<usize> = (0..d).filter(|&j| j != j0).collect();

    let mut blocks = Vec::new();
    let mut left = n;
    if m >= 2 {
        blocks.push(Block { owner: Some(nil[0]), size: m });
        left -= m;
    }
    while left > 0 {
        // Free coordinates are drawn one at a time.
        let pick = rng.random_range(0..=nil.len());
        if pick == nil.len() {
            blocks.push(Block { owner: None, size: 1 });
            left -= 1;
        } else {
            let size = rng.random_range(1..=m.min(left));
            blocks.push(Block { owner: Some(nil[pick]), size });
            left -= size;
        }
    }
    blocks.shuffle(&mut rng);

    let mut starts = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for b in &blocks {
        starts.push(at);
        at += b.size;
    }

    let mut ms = vec![Matrix::<Rational>::zeros(n, n); d];
    for (b, &start) in blocks.iter().zip(&starts) {
        if let Some(k) = b.owner {
            place_shifts(&mut ms[k], start, &[b.size]);
        }
    }

    // T_{j0}: a signed permutation of interchangeable blocks.
    let mut groups: Vec<(Option<usize>, usize, Vec<usize>)> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let key = (b.owner, b.size);
        match groups.iter_mut().find(|g| (g.0, g.1) == key) {
            Some(g) => g.2.push(i),
            None => groups.push((b.owner, b.size, vec![i])),
        }
    }
    for (_, size, members) in &groups {
        let mut image = members.clone();
        image.shuffle(&mut rng);
        for (&from, &to) in members.iter().zip(&image) {
            let sign = Rational::from_i64(if rng.random_bool(0.5) { -1 } else { 1 });
            for i in 0..*size {
                ms[j0].set(starts[to] + i, starts[from] + i, sign.clone());
            }
        }
    }

    let reported_m = blocks.iter().filter(|b| b.owner.is_some()).map(|b| b.size).max().unwrap_or(1);
    Ok(Structured { tuple: OperatorTuple::new(ms)?, j0, m: reported_m, mu: 1 })
}

/// A uniformly drawn small rational `a/b` with `a ∈ {−2,…,2}`, `b ∈ {1,2}`.
fn small(rng: &mut ChaCha8Rng) -> Rational {
    small_rational(rng.random_range(-2..=2), rng.random_range(1..=2))
}

/// A random tuple, commuting with high probability.
///
/// Even seeds draw every operator as `c_0 I + c_1 A + c_2 A²` for one shared
/// small-rational matrix `A`, so the tuple commutes. Odd seeds draw the
/// operators independently; these rarely commute and exercise the filter.
pub fn random_tuple(n: usize, d: usize, seed: u64) -> Result<OperatorTuple<Rational>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidDimension("n and d must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms = if seed.is_multiple_of(2) {
        let a = Matrix::from_fn(n, n, |_, _| small(&mut rng));
        let a2 = a.mul(&a)?;
        let id = Matrix::<Rational>::identity(n);
        (0..d)
            .map(|_| {
                let c: Vec<Rational> = (0..3).map(|_| Rational::from_i64(rng.random_range(-1..=1))).collect();
                id.scale(&c[0]).add(&a.scale(&c[1]))?.add(&a2.scale(&c[2]))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        (0..d).map(|_| Matrix::from_fn(n, n, |_, _| small(&mut rng))).collect()
    };
    OperatorTuple::new(ms)
}

/// Seed of the `i`-th candidate in a search keyed by `seed`.
pub fn derived_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub index: usize,
    pub seed: u64,
    pub tuple: OperatorTuple<Rational>,
    pub mp: CheckReport,
    pub minf: CheckReport,
}

/// Draws `budget` random tuples, keeps the commuting ones that pass both
/// `check_mp(m, 2)` and `check_minf(m)`. Output is in candidate order.
pub fn random_search(spec: &GeneratorSpec, budget: usize, samples: usize) -> Result<Vec<SearchHit>> {
    if budget == 0 {
        return Err(Error::Parameter("search budget must be >= 1".into()));
    }
    if spec.n == 0 || spec.d == 0 || spec.m == 0 {
        return Err(Error::Parameter("n, d and m must be >= 1".into()));
    }
    let cfg = SampleConfig::new(samples, spec.seed);
    let hits = (0..budget)
        .into_par_iter()
        .map(|i| {
            let seed = derived_seed(spec.seed, i);
            let tuple = random_tuple(spec.n, spec.d, seed)?;
            if !tuple.validate().passed() {
                return Ok(None);
            }
            let mp = check_mp_defect(&tuple, spec.m, 2.0, &cfg)?;
            if !mp.passed() {
                return Ok(None);
            }
            let minf = check_minf(&tuple, spec.m, &cfg)?;
            Ok(minf.passed().then_some(SearchHit { index: i, seed, tuple, mp, minf }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;
    use crate::space::NormSpec;

    #[test]
    fn isometry_examples() {
        let one = gen_isometry(1, 3).unwrap();
        assert!(one.get(0, 0).abs_f64() == 1.0);
        assert_eq!(gen_isometry(2, 0).unwrap(), gen_isometry(2, 0).unwrap());
        let u = gen_isometry(4, 7).unwrap();
        let spec = NormSpec::new(3.0, 4).unwrap();
        for x in crate::space::sample_unit_sphere(1, 30, &spec) {
            let ux = u.to_float().mul_vec(&x).unwrap();
            assert!((crate::space::norm(&ux, &spec) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotent_examples() {
        let n = gen_nilpotent(2, 2, 0).unwrap();
        assert_eq!(n, Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]).unwrap());
        for (dim, m, seed) in [(5, 3, 1), (6, 2, 9), (4, 4, 2), (3, 1, 0)] {
            let a = gen_nilpotent(dim, m, seed).unwrap();
            assert!(a.pow(m).unwrap().is_zero());
            assert!(!a.pow(m - 1).unwrap().is_zero());
        }
        assert!(matches!(gen_nilpotent(2, 3, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn paper_structure_small_is_e1_shaped() {
        for seed in 0..6 {
            let s = gen_paper_structure(2, 2, 2, seed).unwrap();
            assert_eq!(s.m, 2);
            let t = &s.tuple;
            let nil = t.matrix(1 - s.j0).unwrap();
            assert!(!nil.is_zero() && nil.pow(2).unwrap().is_zero());
            let u = t.matrix(s.j0).unwrap();
            assert!(u.get(0, 0).abs_f64() == 1.0 && u.get(1, 1) == u.get(0, 0));
        }
    }

    #[test]
    fn paper_structure_m1_is_zero_and_isometry() {
        let s = gen_paper_structure(3, 2, 1, 4).unwrap();
        assert!(s.tuple.matrix(1 - s.j0).unwrap().is_zero());
        assert_eq!(s.m, 1);
    }

    #[test]
    fn paper_structure_commutes_and_cross_products_vanish() {
        for seed in 0..20 {
            let s = gen_paper_structure(6, 3, 3, seed).unwrap();
            assert!(s.tuple.validate().passed(), "seed {seed}");
            let others: Vec<usize> = (0..3).filter(|&j| j != s.j0).collect();
            let mut alpha = vec![0; 3];
            alpha[others[0]] = 1;
            alpha[others[1]] = 1;
            assert!(s.tuple.monomial(&MultiIndex::new(alpha).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn paper_structure_rejects_infeasible() {
        assert!(matches!(gen_paper_structure(2, 1, 2, 0), Err(Error::Construction(_))));
        assert!(matches!(gen_paper_structure(2, 2, 3, 0), Err(Error::Construction(_))));
    }

    #[test]
    fn random_tuples_even_seeds_commute() {
        for seed in (0..20).step_by(2) {
            assert!(random_tuple(3, 3, seed).unwrap().validate().passed());
        }
    }

    #[test]
    fn random_search_contract() {
        let spec = GeneratorSpec { family: Family::Random, n: 2, d: 2, m: 1, seed: 3 };
        assert!(random_search(&spec, 0, 8).is_err());
        let a = random_search(&spec, 60, 8).unwrap();
        let b = random_search(&spec, 60, 8).unwrap();
        assert_eq!(a, b);
        for hit in &a {
            assert!(hit.mp.passed() && hit.minf.passed());
        }
    }
}

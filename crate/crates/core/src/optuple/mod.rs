//! Commuting operator tuples `T = (T_1, …, T_d)` on `𝕂^n`.

mod cache;
mod io;
pub(crate) mod matrix;
mod opnorm;

pub use cache::{MonomialCache, DEFAULT_CACHE_BUDGET};
pub use io::{tuple_to_file, write_atomic, AnyTuple, TupleFile};
pub use matrix::Matrix;
pub use opnorm::{operator_norm, spectral_norm, NormBound, OperatorNorm};

use std::fmt;
use std::sync::Arc;

use crate::checkers::{CheckMode, CheckParams, CheckReport, Verdict, Witness};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::space::{self, NormSpec, Rational, Scalar};

pub const DEFAULT_COMMUTATIVITY_TOL: f64 = 1e-10;

/// A tuple of `d` square `n×n` matrices together with the ambient norm.
///
/// Monomials `T^α` are memoised in an internal [`MonomialCache`]; cloning a
/// tuple starts a fresh cache.
pub struct OperatorTuple<S: Scalar> {
    matrices: Vec<Matrix<S>>,
    norm: NormSpec,
    commutativity_tol: f64,
    cache: MonomialCache<S>,
    zero: Arc<Matrix<S>>,
}

impl<S: Scalar> Clone for OperatorTuple<S> {
    fn clone(&self) -> Self {
        Self::assemble(self.matrices.clone(), self.norm, self.commutativity_tol, self.cache.budget())
    }
}

impl<S: Scalar> fmt::Debug for OperatorTuple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorTuple")
            .field("d", &self.d())
            .field("n", &self.n())
            .field("q", &self.norm.q)
            .field("matrices", &self.matrices)
            .finish()
    }
}

impl<S: Scalar> PartialEq for OperatorTuple<S> {
    fn eq(&self, other: &Self) -> bool {
        self.matrices == other.matrices && self.norm == other.norm
    }
}

impl<S: Scalar> OperatorTuple<S> {
    /// Builds a tuple in the Euclidean norm. Commutativity is not checked
    /// here; see [`validate`](Self::validate).
    pub fn new(matrices: Vec<Matrix<S>>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidDimension("a tuple needs d >= 1 operators".into()));
        };
        let n = first.rows();
        if n == 0 {
            return Err(Error::InvalidDimension("space dimension must be >= 1".into()));
        }
        for (j, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!(
                    "operator {j} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self::assemble(
            matrices,
            NormSpec::euclidean(n),
            DEFAULT_COMMUTATIVITY_TOL,
            DEFAULT_CACHE_BUDGET,
        ))
    }

    fn assemble(matrices: Vec<Matrix<S>>, norm: NormSpec, tol: f64, budget: usize) -> Self {
        let n = matrices[0].rows();
        let d = matrices.len();
        let cache = MonomialCache::new(budget);
        cache.insert(MultiIndex::zero(d).expect("d >= 1"), Arc::new(Matrix::identity(n)));
        OperatorTuple {
            matrices,
            norm,
            commutativity_tol: tol,
            cache,
            zero: Arc::new(Matrix::zeros(n, n)),
        }
    }

    /// Same operators, ambient norm `ℓ^q`.
    pub fn with_norm(&self, q: f64) -> Result<Self> {
        let norm = NormSpec::new(q, self.n())?;
        Ok(Self::assemble(self.matrices.clone(), norm, self.commutativity_tol, self.cache.budget()))
    }

    pub fn with_commutativity_tol(mut self, tol: f64) -> Self {
        self.commutativity_tol = tol;
        self
    }

    pub fn with_cache_budget(&self, budget: usize) -> Self {
        Self::assemble(self.matrices.clone(), self.norm, self.commutativity_tol, budget)
    }

    pub fn d(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> Result<&Matrix<S>> {
        self.matrices.get(j).ok_or(Error::Index { index: j, len: self.d() })
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn commutativity_tol(&self) -> f64 {
        self.commutativity_tol
    }

    pub fn cache(&self) -> &MonomialCache<S> {
        &self.cache
    }

    /// Worst commutator `T_iT_j − T_jT_i` over all pairs: its largest entry,
    /// the pair, and the column where that entry sits.
    pub fn worst_commutator(&self) -> (f64, Option<(usize, usize, usize)>, bool) {
        let mut worst = 0.0f64;
        let mut at = None;
        let mut all_zero = true;
        for i in 0..self.d() {
            for j in (i + 1)..self.d() {
                let a = self.matrices[i].mul(&self.matrices[j]).expect("square");
                let b = self.matrices[j].mul(&self.matrices[i]).expect("square");
                let c = a.sub(&b).expect("same shape");
                if c.is_zero() {
                    continue;
                }
                all_zero = false;
                for col in 0..c.cols() {
                    let m = (0..c.rows()).map(|r| c.get(r, col).abs_f64()).fold(0.0, f64::max);
                    if m > worst || at.is_none() {
                        worst = m;
                        at = Some((i, j, col));
                    }
                }
            }
        }
        (worst, at, all_zero)
    }

    /// Pairwise commutativity: exact in rational arithmetic, within the
    /// commutativity tolerance in floating point.
    pub fn validate(&self) -> CheckReport {
        let (worst, at, all_zero) = self.worst_commutator();
        let passed = if S::is_exact() { all_zero } else { worst <= self.commutativity_tol };
        let mut report = CheckReport::new(
            "commutativity",
            CheckMode::Exact,
            S::MODE,
            CheckParams { q: self.norm.q, ..CheckParams::default() },
        );
        report.max_residual = worst;
        if let Some((i, j, col)) = at {
            report.pair = Some([i, j]);
            if !passed {
                let mut e = vec![S::zero(); self.n()];
                e[col] = S::one();
                report.witness = Some(Witness {
                    x: e.iter().map(Scalar::to_entry).collect(),
                    identity: format!("T{i}*T{j} - T{j}*T{i}"),
                    residual: worst,
                });
            }
        }
        report.verdict = if passed { Verdict::Pass } else { Verdict::Fail };
        report
    }

    /// `T^α`, memoised. Missing entries are built along the path that
    /// repeatedly decrements the first nonzero coordinate.
    pub fn monomial(&self, alpha: &MultiIndex) -> Result<Arc<Matrix<S>>> {
        if alpha.len() != self.d() {
            return Err(Error::Shape(format!(
                "multi-index of length {} for a {}-tuple",
                alpha.len(),
                self.d()
            )));
        }
        if let Some(m) = self.cache.get(alpha) {
            return Ok(m);
        }
        let mut path = Vec::new();
        let mut cur = alpha.clone();
        let mut acc = loop {
            let j = cur.entries().iter().position(|&a| a > 0).expect("zero index is cached");
            path.push(j);
            cur = cur.decrement(j).expect("positive entry");
            if let Some(m) = self.cache.get(&cur) {
                break m;
            }
        };
        for &j in path.iter().rev() {
            cur = cur.increment(j);
            let next = if acc.is_zero() {
                Arc::clone(&self.zero)
            } else {
                Arc::new(self.matrices[j].mul(&acc)?)
            };
            acc = self.cache.insert(cur.clone(), next);
        }
        Ok(acc)
    }

    pub fn apply_monomial(&self, alpha: &MultiIndex, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!("vector of length {} in dimension {}", x.len(), self.n())));
        }
        let m = self.monomial(alpha)?;
        if m.is_zero() {
            return Ok(vec![S::zero(); self.n()]);
        }
        m.mul_vec(x)
    }

    /// `(‖T_j^k x‖)_{k=0..=horizon}` in the ambient norm.
    pub fn power_orbit(&self, j: usize, x: &[S], horizon: usize) -> Result<Vec<f64>> {
        let t = self.matrix(j)?;
        let mut v = x.to_vec();
        let mut out = Vec::with_capacity(horizon + 1);
        for k in 0..=horizon {
            out.push(space::norm(&v, &self.norm));
            if k < horizon {
                v = t.mul_vec(&v)?;
            }
        }
        Ok(out)
    }

    /// The tuple `(T_1^m, …, T_d^m)`.
    pub fn power_tuple(&self, m: usize) -> Result<Self> {
        let powers = (0..self.d())
            .map(|j| self.monomial(&MultiIndex::axis(self.d(), j, m)?).map(|a| (*a).clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(powers, self.norm, self.commutativity_tol, self.cache.budget()))
    }

    /// `T'_j`: the tuple with operator `j` removed.
    pub fn without(&self, j: usize) -> Result<Self> {
        if self.d() < 2 {
            return Err(Error::InvalidDimension("cannot remove from a 1-tuple".into()));
        }
        if j >= self.d() {
            return Err(Error::Index { index: j, len: self.d() });
        }
        let mut ms = self.matrices.clone();
        ms.remove(j);
        Ok(Self::assemble(ms, self.norm, self.commutativity_tol, self.cache.budget()))
    }

    pub fn to_float(&self) -> OperatorTuple<f64> {
        OperatorTuple::assemble(
            self.matrices.iter().map(Matrix::to_float).collect(),
            self.norm,
            self.commutativity_tol,
            self.cache.budget(),
        )
    }
}

impl OperatorTuple<f64> {
    /// Exact rational image of every double entry.
    pub fn to_rational(&self) -> Result<OperatorTuple<Rational>> {
        let ms = self
            .matrices
            .iter()
            .map(|m| {
                Matrix::from_rows(
                    m.to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(Rational::from_f64_exact).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorTuple::assemble(ms, self.norm, self.commutativity_tol, self.cache.budget()))
    }
}

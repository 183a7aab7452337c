//! Multi-indices `α ∈ ℕ^d` and the integer combinatorics that weight them.
//!
//! Positions are 0-based throughout the crate: `remove_at(0)` deletes the
//! entry belonging to the first operator of a tuple.

use std::fmt;

use num::{BigUint, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multi-index of length `d ≥ 1`, naming the monomial `T_1^{α_1} ⋯ T_d^{α_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension("multi-index needs length >= 1".into()));
        }
        Ok(MultiIndex(entries))
    }

    pub fn zero(d: usize) -> Result<Self> {
        Self::new(vec![0; d])
    }

    /// The unit index `e_j`, scaled by `k`.
    pub fn axis(d: usize, j: usize, k: usize) -> Result<Self> {
        if j >= d {
            return Err(Error::Index { index: j, len: d });
        }
        let mut e = vec![0; d];
        e[j] = k;
        Self::new(e)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `|α|`, the sum of the entries.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `|α|! / (α_1! ⋯ α_d!)`, as a product of binomials so no factorial is
    /// ever formed.
    pub fn multinomial(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut partial = 0usize;
        for &a in &self.0 {
            partial += a;
            acc *= binomial(partial as u64, a as u64);
        }
        acc
    }

    /// 64-bit multinomial with checked overflow, for the float backend.
    pub fn multinomial_u64(&self) -> Result<u64> {
        let mut acc: u64 = 1;
        let mut partial = 0u64;
        for &a in &self.0 {
            partial += a as u64;
            let b = binomial(partial, a as u64)
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("binomial({partial}, {a}) exceeds u64")))?;
            acc = acc
                .checked_mul(b)
                .ok_or_else(|| Error::Overflow(format!("multinomial of {self} exceeds u64")))?;
        }
        Ok(acc)
    }

    /// `α'_j`: the index with position `j` deleted.
    pub fn remove_at(&self, j: usize) -> Result<MultiIndex> {
        if self.0.len() < 2 {
            return Err(Error::InvalidDimension(
                "cannot delete from a multi-index of length 1".into(),
            ));
        }
        if j >= self.0.len() {
            return Err(Error::Index { index: j, len: self.0.len() });
        }
        let mut e = self.0.clone();
        e.remove(j);
        Ok(MultiIndex(e))
    }

    /// Inverse of [`remove_at`](Self::remove_at): place `value` at position `j`.
    pub fn insert_at(&self, j: usize, value: usize) -> Result<MultiIndex> {
        if j > self.0.len() {
            return Err(Error::Index { index: j, len: self.0.len() + 1 });
        }
        let mut e = self.0.clone();
        e.insert(j, value);
        Ok(MultiIndex(e))
    }

    /// `α − e_j`, or `None` when `α_j = 0`.
    pub fn decrement(&self, j: usize) -> Option<MultiIndex> {
        match self.0.get(j) {
            Some(&a) if a > 0 => {
                let mut e = self.0.clone();
                e[j] -= 1;
                Some(MultiIndex(e))
            }
            _ => None,
        }
    }

    pub fn increment(&self, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "multi-index lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<usize>> for MultiIndex {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        MultiIndex::new(v)
    }
}

impl From<MultiIndex> for Vec<usize> {
    fn from(a: MultiIndex) -> Self {
        a.0
    }
}

/// Every `α ∈ ℕ^d` with `|α| = k`, in ascending lexicographic order.
pub fn enumerate(d: usize, k: usize) -> Result<Vec<MultiIndex>> {
    if d == 0 {
        return Err(Error::InvalidDimension("d must be >= 1".into()));
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; d];
    fill(&mut cur, 0, k, &mut out);
    Ok(out)
}

fn fill(cur: &mut [usize], pos: usize, remaining: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.to_vec()));
        return;
    }
    for a in 0..=remaining {
        cur[pos] = a;
        fill(cur, pos + 1, remaining - a, out);
    }
    cur[pos] = 0;
}

/// All indices with `|α| ≤ k`, grouped by ascending order.
pub fn enumerate_up_to(d: usize, k: usize) -> Result<Vec<MultiIndex>> {
    let mut out = Vec::new();
    for level in 0..=k {
        out.extend(enumerate(d, level)?);
    }
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Descending Pochhammer symbol `n^{(k)} = n(n−1)⋯(n−k+1)`, zero for `k > n`.
pub fn pochhammer(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, i| acc * i)
}

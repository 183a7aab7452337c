use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::space::{Rational, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_struct("Matrix").field("rows", &rows).finish()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and examples: integer entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| S::from_i64(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Largest entry modulus, in floating point.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t *= b;
                    out.data[i * other.cols + j] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if self.cols != x.len() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t *= b;
                    acc += &t;
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Self> {
        self.zip_with(other, |a, b| {
            let mut t = a.clone();
            t += b;
            t
        })
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Self> {
        self.zip_with(other, |a, b| {
            let mut t = a.clone();
            t -= b;
            t
        })
    }

    fn zip_with(&self, other: &Matrix<S>, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| {
            let mut t = v.clone();
            t *= c;
            t
        })
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Matrix<S>]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Shape("vstack of matrices with different widths".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Ok(Matrix { rows, cols, data })
    }

    pub fn rank(&self) -> usize {
        S::rank(self)
    }
}

/// Rank over ℚ by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix.
pub(crate) fn exact_rank(m: &Matrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in (rank + 1)..rows {
            for k in (c + 1)..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}

/// Numerical rank: singular values above `1e-8 · σ_max`.
pub(crate) fn float_rank(m: &Matrix<f64>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let dm = nalgebra::DMatrix::from_row_slice(m.rows(), m.cols(), m.entries());
    let sv = dm.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-8 * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn multiply_and_power() {
        let n = q(&[&[0, 1], &[0, 0]]);
        assert!(n.pow(2).unwrap().is_zero());
        assert_eq!(n.pow(0).unwrap(), Matrix::identity(2));
        let a = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&a).unwrap(), q(&[&[7, 10], &[15, 22]]));
        assert_eq!(
            a.mul_vec(&[Rational::from_i64(1), Rational::from_i64(-1)]).unwrap(),
            vec![Rational::from_i64(-1), Rational::from_i64(-1)]
        );
        assert!(a.mul(&Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn ranks_agree() {
        let cases: Vec<(Vec<&[i64]>, usize)> = vec![
            (vec![&[0, 1], &[0, 0]], 1),
            (vec![&[1, 2], &[2, 4]], 1),
            (vec![&[1, 2], &[3, 4]], 2),
            (vec![&[0, 0], &[0, 0]], 0),
            (vec![&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]], 2),
            (vec![&[2, 0, 0], &[0, 0, 3], &[0, 5, 0]], 3),
        ];
        for (rows, expected) in cases {
            let m = q(&rows);
            assert_eq!(exact_rank(&m), expected, "{rows:?}");
            assert_eq!(float_rank(&m.to_float()), expected, "{rows:?}");
        }
    }

    #[test]
    fn exact_rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())],
            vec![Rational::new(3.into(), 2.into()), Rational::from_i64(1)],
        ])
        .unwrap();
        assert_eq!(exact_rank(&m), 1);
        let tall = Matrix::vstack(&[q(&[&[0, 1], &[0, 0]]), q(&[&[0, 0], &[1, 0]])]).unwrap();
        assert_eq!(tall.rows(), 4);
        assert_eq!(exact_rank(&tall), 2);
    }
}

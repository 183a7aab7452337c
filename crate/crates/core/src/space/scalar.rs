use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, BigUint, FromPrimitive, Num, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{NormSpec, ScalarMode};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::optuple::Matrix;

/// Exact scalar field of the rational backend.
pub type Rational = BigRational;

/// A scalar as it appears in tuple files and reports: rationals are written
/// as `"p/q"` strings (integers as `"p"`), floats as JSON numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(f64),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Text(s) => f.write_str(s),
            Entry::Number(v) => write!(f, "{v}"),
        }
    }
}

/// Arithmetic backend shared by every checker.
///
/// Everything generic in the crate is written against this trait, so each
/// computation runs either exactly over `Rational` or in `f64`.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;
    fn from_biguint(v: &BigUint) -> Self;
    fn to_f64(&self) -> f64;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Multinomial weight `|α|!/α!` in the width this backend uses.
    fn weight(alpha: &MultiIndex) -> Result<Self>;

    /// Sum of a sequence; compensated in floating point.
    fn accumulate<I: IntoIterator<Item = Self>>(items: I) -> Self;

    fn to_entry(&self) -> Entry;
    fn from_entry(e: &Entry) -> Result<Self>;

    /// Exact image of a double in this field.
    fn from_f64_exact(v: f64) -> Result<Self>;

    /// `‖x‖^p` in the ambient `ℓ^q` norm, computed in this field.
    fn norm_power(x: &[Self], p: f64, spec: &NormSpec) -> Result<Self>;

    /// Deterministic probe vectors: basis, sign patterns, then pseudorandom.
    fn sample_set(dim: usize, count: usize, seed: u64, spec: &NormSpec) -> Vec<Vec<Self>>;

    fn rank(m: &Matrix<Self>) -> usize;

    fn is_exact() -> bool {
        Self::MODE == ScalarMode::ExactRational
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_biguint(v: &BigUint) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn weight(alpha: &MultiIndex) -> Result<Self> {
        alpha.multinomial_u64().map(|w| w as f64)
    }

    fn accumulate<I: IntoIterator<Item = Self>>(items: I) -> Self {
        neumaier_sum(items)
    }

    fn to_entry(&self) -> Entry {
        Entry::Number(*self)
    }

    fn from_entry(e: &Entry) -> Result<Self> {
        match e {
            Entry::Number(v) => Ok(*v),
            Entry::Text(s) => ToPrimitive::to_f64(&parse_rational(s)?)
                .ok_or_else(|| Error::Parse(format!("entry {s:?} not representable as f64"))),
        }
    }

    fn from_f64_exact(v: f64) -> Result<Self> {
        Ok(v)
    }

    fn norm_power(x: &[Self], p: f64, spec: &NormSpec) -> Result<Self> {
        check_norm_args(x.len(), p, spec)?;
        Ok(float_norm_power(x.iter().copied(), p, spec.q))
    }

    fn sample_set(dim: usize, count: usize, seed: u64, spec: &NormSpec) -> Vec<Vec<Self>> {
        super::sample_unit_sphere(seed, count, &NormSpec { dim, ..*spec })
    }

    fn rank(m: &Matrix<Self>) -> usize {
        crate::optuple::matrix::float_rank(m)
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_biguint(v: &BigUint) -> Self {
        Rational::from_integer(BigInt::from(v.clone()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn weight(alpha: &MultiIndex) -> Result<Self> {
        Ok(Self::from_biguint(&alpha.multinomial()))
    }

    fn accumulate<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut acc = Rational::zero();
        for v in items {
            acc += &v;
        }
        acc
    }

    fn to_entry(&self) -> Entry {
        Entry::Text(format_rational(self))
    }

    fn from_entry(e: &Entry) -> Result<Self> {
        match e {
            Entry::Text(s) => parse_rational(s),
            Entry::Number(v) => Self::from_f64_exact(*v),
        }
    }

    fn from_f64_exact(v: f64) -> Result<Self> {
        Rational::from_f64(v).ok_or_else(|| Error::Parse(format!("non-finite value {v}")))
    }

    fn norm_power(x: &[Self], p: f64, spec: &NormSpec) -> Result<Self> {
        check_norm_args(x.len(), p, spec)?;
        let k = exact_exponent(p, spec.q).ok_or_else(|| {
            Error::ExactUnavailable(format!(
                "exact norm powers need an even integer p equal to q (p = {p}, q = {})",
                spec.q
            ))
        })?;
        Ok(Self::accumulate(x.iter().map(|v| num::pow(v.clone(), k))))
    }

    fn sample_set(dim: usize, count: usize, seed: u64, _spec: &NormSpec) -> Vec<Vec<Self>> {
        super::sample_rational_directions(seed, count, dim)
    }

    fn rank(m: &Matrix<Self>) -> usize {
        crate::optuple::matrix::exact_rank(m)
    }
}

/// `Some(p)` when `‖x‖^p` is a polynomial in the coordinates, i.e. `p = q` is
/// an even integer.
pub fn exact_exponent(p: f64, q: f64) -> Option<usize> {
    if p == q && p > 0.0 && p.fract() == 0.0 && (p as u64).is_multiple_of(2) && p <= 64.0 {
        Some(p as usize)
    } else {
        None
    }
}

fn check_norm_args(len: usize, p: f64, spec: &NormSpec) -> Result<()> {
    if len != spec.dim {
        return Err(Error::Shape(format!("vector of length {len} in dimension {}", spec.dim)));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Parameter(format!("p must lie in (0, inf), got {p}")));
    }
    Ok(())
}

pub(crate) fn float_norm_power(x: impl Iterator<Item = f64>, p: f64, q: f64) -> f64 {
    let pow = |v: f64| {
        let a = v.abs();
        if q.fract() == 0.0 && q <= 64.0 {
            a.powi(q as i32)
        } else {
            a.powf(q)
        }
    };
    let s = neumaier_sum(x.map(pow));
    if p == q {
        s
    } else {
        s.powf(p / q)
    }
}

/// Neumaier's variant of Kahan summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in items {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"`, or a decimal literal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational entry {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(t) {
        return Ok(Rational::from_integer(n));
    }
    // Decimal literal: interpret exactly in base ten.
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() && int.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
        .map_err(|_| bad())?;
    let denom = num::pow(BigInt::from(10u32), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Rational with a small numerator and denominator; used by generators.
pub fn small_rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

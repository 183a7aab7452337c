//! Defect sequences `Q^{n,p}(T,x)`, the alternating functionals `P_ℓ`, and
//! the quantities derived from them.

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{self, factorial, pochhammer, MultiIndex};
use crate::optuple::OperatorTuple;
use crate::space::{self, Scalar};

/// Mixed tolerance `|a − b| ≤ abs + rel · max(|a|, |b|)` for float mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-7 }
    }
}

/// Outcome of comparing two quantities. In exact arithmetic `threshold` is
/// zero and `equal` is true equality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub residual: f64,
    pub threshold: f64,
    pub equal: bool,
}

impl Tolerance {
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    pub fn compare<S: Scalar>(&self, a: &S, b: &S) -> Comparison {
        let mut diff = a.clone();
        diff -= b;
        let residual = diff.abs_f64();
        if S::is_exact() {
            Comparison { residual, threshold: 0.0, equal: a == b }
        } else {
            let threshold = self.threshold(a.abs_f64().max(b.abs_f64()));
            Comparison { residual, threshold, equal: residual <= threshold }
        }
    }

    /// Compares a signed sum against zero, using its larger one-signed part
    /// as the scale.
    pub fn vanishes<S: Scalar>(&self, s: &SignedSum<S>) -> Comparison {
        let residual = s.value.abs_f64();
        if S::is_exact() {
            Comparison { residual, threshold: 0.0, equal: s.value.is_zero() }
        } else {
            let threshold = self.threshold(s.pos.max(s.neg));
            Comparison { residual, threshold, equal: residual <= threshold }
        }
    }
}

/// `Σ_k c_k v_k` with signed integer weights, plus the magnitudes of its
/// positive and negative parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedSum<S> {
    pub value: S,
    pub pos: f64,
    pub neg: f64,
}

/// `Σ_{k=0}^{ℓ} (−1)^{ℓ−k} C(ℓ,k) values[offset + k]`.
pub fn alternating_sum<S: Scalar>(values: &[S], ell: usize, offset: usize) -> Result<SignedSum<S>> {
    if values.len() < offset + ell + 1 {
        return Err(Error::Length { len: values.len(), order: offset + ell });
    }
    let mut terms = Vec::with_capacity(ell + 1);
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for k in 0..=ell {
        let c = S::from_biguint(&multiindex::binomial(ell as u64, k as u64));
        let mut t = values[offset + k].clone();
        t *= &c;
        let mag = t.abs_f64();
        let t = if (ell - k) % 2 == 1 { -t } else { t };
        // The sign of the product decides which side it lands on.
        if t.to_f64() >= 0.0 {
            pos.push(mag);
        } else {
            neg.push(mag);
        }
        terms.push(t);
    }
    Ok(SignedSum {
        value: S::accumulate(terms),
        pos: space::neumaier_sum(pos),
        neg: space::neumaier_sum(neg),
    })
}

/// `Q^0(x), …, Q^N(x)` for one vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectSequence<S> {
    pub values: Vec<S>,
    pub p: f64,
    pub x: Vec<S>,
    pub horizon: usize,
}

impl<S: Scalar> DefectSequence<S> {
    pub fn compute(t: &OperatorTuple<S>, p: f64, x: &[S], horizon: usize) -> Result<Self> {
        let values = (0..=horizon).map(|n| q_value(t, p, x, n)).collect::<Result<Vec<_>>>()?;
        Ok(DefectSequence { values, p, x: x.to_vec(), horizon })
    }

    /// `P_ℓ(x)` from the stored prefix; needs `ℓ ≤ N`.
    pub fn p_ell(&self, ell: usize) -> Result<SignedSum<S>> {
        alternating_sum(&self.values, ell, 0)
    }
}

/// Default sequence horizon `N = 2m + μ + 4`.
pub fn default_horizon(m: usize, mu: usize) -> usize {
    2 * m + mu + 4
}

/// `Q^{n,p}(T,x) = Σ_{|α|=n} (n!/α!) ‖T^α x‖^p`.
pub fn q_value<S: Scalar>(t: &OperatorTuple<S>, p: f64, x: &[S], n: usize) -> Result<S> {
    let spec = t.norm_spec();
    let mut terms = Vec::new();
    for alpha in multiindex::enumerate(t.d(), n)? {
        let m = t.monomial(&alpha)?;
        if m.is_zero() {
            continue;
        }
        let mut v = S::norm_power(&m.mul_vec(x)?, p, spec)?;
        v *= &S::weight(&alpha)?;
        terms.push(v);
    }
    // A validated tuple still needs the shape check when every term vanished.
    if x.len() != t.n() {
        return Err(Error::Shape(format!("vector of length {} in dimension {}", x.len(), t.n())));
    }
    Ok(S::accumulate(terms))
}

/// `P_ℓ^{(p)}(T,x) = Σ_{k=0}^{ℓ} (−1)^{ℓ−k} C(ℓ,k) Q^k(x)`.
pub fn p_ell<S: Scalar>(t: &OperatorTuple<S>, p: f64, x: &[S], ell: usize) -> Result<S> {
    Ok(p_ell_signed(t, p, x, ell)?.value)
}

pub fn p_ell_signed<S: Scalar>(
    t: &OperatorTuple<S>,
    p: f64,
    x: &[S],
    ell: usize,
) -> Result<SignedSum<S>> {
    DefectSequence::compute(t, p, x, ell)?.p_ell(ell)
}

/// The `order`-th forward difference `Δ^order s`.
pub fn forward_difference<S: Scalar>(seq: &[S], order: usize) -> Result<Vec<S>> {
    if seq.len() <= order {
        return Err(Error::Length { len: seq.len(), order });
    }
    let mut cur = seq.to_vec();
    for _ in 0..order {
        cur = cur
            .windows(2)
            .map(|w| {
                let mut d = w[1].clone();
                d -= &w[0];
                d
            })
            .collect();
    }
    Ok(cur)
}

/// Newton coefficients `(P_k(x)/k!)_{k<m}` of the interpolant of `Q^n(x)`.
pub fn newton_coefficients<S: Scalar>(
    t: &OperatorTuple<S>,
    p: f64,
    x: &[S],
    m: usize,
) -> Result<Vec<S>> {
    if m == 0 {
        return Err(Error::Parameter("Newton form needs m >= 1".into()));
    }
    let seq = DefectSequence::compute(t, p, x, m - 1)?;
    (0..m)
        .map(|k| Ok(seq.p_ell(k)?.value / S::from_biguint(&factorial(k as u64))))
        .collect()
}

/// `Σ_k n^{(k)} c_k`: evaluates a Newton-form polynomial at `n`.
pub fn newton_evaluate<S: Scalar>(coeffs: &[S], n: usize) -> S {
    S::accumulate(coeffs.iter().enumerate().map(|(k, c)| {
        let mut t = S::from_biguint(&pochhammer(n as u64, k as u64));
        t *= c;
        t
    }))
}

/// Weight `n^{(|β|)}/β! = C(n, |β|) · |β|!/β!` of the reduced formula.
fn reduced_weight(n: usize, beta: &MultiIndex) -> BigUint {
    multiindex::binomial(n as u64, beta.order() as u64) * beta.multinomial()
}

/// `Q^n(x)` through the reduced sum over `β ∈ ℕ^{d−1}`, `|β| < m`:
/// `Σ_β Σ_j (n^{(|β|)}/β!) ‖T_j^{n−|β|}(T'_j)^β x‖^p`, valid for `n ≥ 2m−1`
/// on tuples that are both `(m,p)`- and `(μ,∞)`-isometric.
pub fn q_reduced<S: Scalar>(
    t: &OperatorTuple<S>,
    p: f64,
    x: &[S],
    n: usize,
    m: usize,
) -> Result<S> {
    if m == 0 {
        return Err(Error::Parameter("reduced formula needs m >= 1".into()));
    }
    if t.d() < 2 {
        return Err(Error::NotApplicable("reduced formula needs d >= 2".into()));
    }
    if n + 1 < 2 * m {
        return Err(Error::Precondition(format!("reduced formula needs n >= 2m-1 = {}, got n = {n}", 2 * m - 1)));
    }
    if x.len() != t.n() {
        return Err(Error::Shape(format!("vector of length {} in dimension {}", x.len(), t.n())));
    }
    let spec = t.norm_spec();
    let mut terms = Vec::new();
    for beta in multiindex::enumerate_up_to(t.d() - 1, m - 1)? {
        let w = S::from_biguint(&reduced_weight(n, &beta));
        for j in 0..t.d() {
            let alpha = beta.insert_at(j, n - beta.order())?;
            let mut v = S::norm_power(&t.apply_monomial(&alpha, x)?, p, spec)?;
            v *= &w;
            terms.push(v);
        }
    }
    Ok(S::accumulate(terms))
}

/// `|x|_∞ = max_{|α| ≤ μ−1} ‖T^α x‖`. Equals the supremum over all `α` only
/// for `(μ,∞)`-isometric tuples; otherwise it is a truncated lower bound.
pub fn infty_norm<S: Scalar>(t: &OperatorTuple<S>, x: &[S], mu: usize) -> Result<f64> {
    if mu == 0 {
        return Err(Error::Parameter("mu must be >= 1".into()));
    }
    orbit_max(t, x, mu - 1)
}

/// `max_{|α| ≤ k} ‖T^α x‖`.
pub fn orbit_max<S: Scalar>(t: &OperatorTuple<S>, x: &[S], k: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for alpha in multiindex::enumerate_up_to(t.d(), k)? {
        best = best.max(space::norm(&t.apply_monomial(&alpha, x)?, t.norm_spec()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optuple::Matrix;
    use crate::space::Rational;

    fn shift_pair() -> OperatorTuple<Rational> {
        OperatorTuple::new(vec![
            Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]).unwrap(),
            Matrix::identity(2),
        ])
        .unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn vecq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| q(c)).collect()
    }

    #[test]
    fn q_value_examples() {
        let t = shift_pair();
        let e2 = vecq(&[0, 1]);
        assert_eq!(q_value(&t, 2.0, &e2, 0).unwrap(), q(1));
        assert_eq!(q_value(&t, 2.0, &e2, 1).unwrap(), q(2));
        assert_eq!(q_value(&t, 2.0, &e2, 2).unwrap(), q(3));
        assert!(matches!(q_value(&t, 2.0, &vecq(&[1]), 0), Err(Error::Shape(_))));
    }

    #[test]
    fn p_ell_examples() {
        let t = shift_pair();
        let e2 = vecq(&[0, 1]);
        assert_eq!(p_ell(&t, 2.0, &e2, 0).unwrap(), q(1));
        assert_eq!(p_ell(&t, 2.0, &e2, 1).unwrap(), q(1));
        assert_eq!(p_ell(&t, 2.0, &e2, 2).unwrap(), q(0));
        let x = vecq(&[3, -4]);
        assert_eq!(p_ell(&t, 2.0, &x, 0).unwrap(), q(25));
    }

    #[test]
    fn forward_difference_examples() {
        let s = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(forward_difference(&s, 2).unwrap(), vec![0.0, 0.0]);
        assert_eq!(forward_difference(&[1.0, 2.0, 4.0, 8.0], 1).unwrap(), vec![1.0, 2.0, 4.0]);
        assert_eq!(forward_difference(&s, 0).unwrap(), s.to_vec());
        assert!(matches!(forward_difference(&s, 4), Err(Error::Length { .. })));
    }

    #[test]
    fn newton_examples() {
        let t = shift_pair();
        let e2 = vecq(&[0, 1]);
        let c = newton_coefficients(&t, 2.0, &e2, 2).unwrap();
        assert_eq!(c, vec![q(1), q(1)]);
        assert_eq!(newton_evaluate(&c, 5), q(6));
        assert_eq!(newton_evaluate(&c, 5), q_value(&t, 2.0, &e2, 5).unwrap());

        let id = OperatorTuple::<Rational>::new(vec![Matrix::identity(1)]).unwrap();
        assert_eq!(newton_coefficients(&id, 2.0, &vecq(&[1]), 1).unwrap(), vec![q(1)]);
        assert!(newton_coefficients(&id, 2.0, &vecq(&[1]), 0).is_err());
    }

    #[test]
    fn q_reduced_examples() {
        let t = shift_pair();
        assert_eq!(q_reduced(&t, 2.0, &vecq(&[0, 1]), 3, 2).unwrap(), q(4));
        assert_eq!(q_reduced(&t, 2.0, &vecq(&[1, 0]), 3, 2).unwrap(), q(1));
        assert_eq!(q_reduced(&t, 2.0, &vecq(&[0, 0]), 3, 2).unwrap(), q(0));
        assert!(matches!(q_reduced(&t, 2.0, &vecq(&[0, 1]), 2, 2), Err(Error::Precondition(_))));
        let one = t.without(0).unwrap();
        assert!(matches!(q_reduced(&one, 2.0, &vecq(&[0, 1]), 3, 2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn infty_norm_examples() {
        let t = shift_pair();
        assert_eq!(infty_norm(&t, &vecq(&[0, 1]), 2).unwrap(), 1.0);
        assert_eq!(infty_norm(&t, &vecq(&[3, 4]), 2).unwrap(), 5.0);
        let id = OperatorTuple::<f64>::new(vec![Matrix::identity(2)]).unwrap();
        assert_eq!(infty_norm(&id, &[0.6, 0.8], 1).unwrap(), space::norm(&[0.6, 0.8], id.norm_spec()));
        assert!(infty_norm(&t, &vecq(&[0, 1]), 0).is_err());
    }

    #[test]
    fn tolerance_modes() {
        let tol = Tolerance::default();
        assert!(tol.compare(&1.0, &(1.0 + 1e-9)).equal);
        assert!(!tol.compare(&1.0, &1.1).equal);
        let c = tol.compare(&q(1), &(q(1) + Rational::new(1.into(), num::BigInt::from(10).pow(30))));
        assert!(!c.equal);
        assert_eq!(c.threshold, 0.0);
    }
}

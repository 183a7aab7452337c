//! Scalar backends and the ambient coordinate space `(𝕂^n, ℓ^q)`.

mod sample;
mod scalar;

pub use sample::{sample_rational_directions, sample_unit_sphere};
pub use scalar::{
    exact_exponent, format_rational, neumaier_sum, parse_rational, small_rational, Entry,
    Rational, Scalar,
};

pub(crate) use scalar::float_norm_power;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate vectors are plain `Vec`s of the backend scalar.
pub type Vector<S> = Vec<S>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarMode {
    #[serde(rename = "rational")]
    ExactRational,
    #[serde(rename = "float")]
    Float64,
}

/// The ambient norm: `ℓ^q` on `dim` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub q: f64,
    pub dim: usize,
}

impl NormSpec {
    pub fn new(q: f64, dim: usize) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Parameter(format!("q must lie in (0, inf), got {q}")));
        }
        if dim == 0 {
            return Err(Error::InvalidDimension("ambient dimension must be >= 1".into()));
        }
        Ok(NormSpec { q, dim })
    }

    pub fn euclidean(dim: usize) -> Self {
        NormSpec { q: 2.0, dim }
    }

    /// `q < 1` gives only a quasinorm; reports carry a note when this is set.
    pub fn is_quasinorm(&self) -> bool {
        self.q < 1.0
    }
}

/// `‖x‖^p` in the ambient norm. Exact over `Rational` when `p = q` is an even
/// integer; an [`Error::ExactUnavailable`] otherwise.
pub fn norm_power<S: Scalar>(x: &[S], p: f64, spec: &NormSpec) -> Result<S> {
    S::norm_power(x, p, spec)
}

/// `‖x‖` in floating point, whatever the backend.
pub fn norm<S: Scalar>(x: &[S], spec: &NormSpec) -> f64 {
    float_norm_power(x.iter().map(Scalar::to_f64), 1.0, spec.q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn norm_power_examples() {
        let l2 = NormSpec::euclidean(2);
        assert_eq!(norm_power(&[0.0, 1.0], 2.0, &l2).unwrap(), 1.0);
        assert_eq!(norm_power(&[3.0, 4.0], 2.0, &l2).unwrap(), 25.0);
        assert_eq!(norm_power(&[r(3), r(4)], 2.0, &l2).unwrap(), r(25));
        let l1 = NormSpec::new(1.0, 2).unwrap();
        assert_eq!(norm_power(&[1.0, 1.0], 1.0, &l1).unwrap(), 2.0);
        assert!((norm(&[3.0, 4.0], &l2) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn norm_power_mixed_exponents() {
        // (|3|^1 + |4|^1)^{2/1} = 49
        let l1 = NormSpec::new(1.0, 2).unwrap();
        assert!((norm_power(&[3.0, -4.0], 2.0, &l1).unwrap() - 49.0).abs() < 1e-12);
        let l4 = NormSpec::new(4.0, 2).unwrap();
        assert_eq!(norm_power(&[r(1), r(-2)], 4.0, &l4).unwrap(), r(17));
    }

    #[test]
    fn norm_power_errors() {
        let l2 = NormSpec::euclidean(3);
        assert!(matches!(norm_power(&[1.0, 2.0], 2.0, &l2), Err(Error::Shape(_))));
        assert!(matches!(norm_power(&[1.0, 2.0, 3.0], 0.0, &l2), Err(Error::Parameter(_))));
        assert!(matches!(
            norm_power(&[r(1), r(2), r(3)], 3.0, &NormSpec::new(3.0, 3).unwrap()),
            Err(Error::ExactUnavailable(_))
        ));
        assert!(NormSpec::new(0.0, 2).is_err());
        assert!(NormSpec::new(2.0, 0).is_err());
    }

    #[test]
    fn zero_iff_zero_vector() {
        let l3 = NormSpec::new(3.0, 3).unwrap();
        assert_eq!(norm_power(&[0.0; 3], 1.5, &l3).unwrap(), 0.0);
        assert!(norm_power(&[0.0, 1e-100, 0.0], 0.5, &l3).unwrap() > 0.0);
    }
}

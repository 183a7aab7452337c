//! Verification toolkit for commuting operator tuples that are
//! `(m,p)`-isometric and `(μ,∞)`-isometric.

pub mod checkers;
pub mod cli;
pub mod defect;
pub mod error;
pub mod generators;
pub mod multiindex;
pub mod optuple;
pub mod space;
pub mod theorems;

pub use error::{Error, Result};
pub use multiindex::MultiIndex;
pub use optuple::{AnyTuple, Matrix, OperatorTuple};
pub use space::{NormSpec, Rational, Scalar, ScalarMode};

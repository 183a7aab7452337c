//! The tuple file format.
//!
//! ```json
//! { "d": 2, "n": 2, "scalar": "rational",
//!   "matrices": [ [["0","1"],["0","0"]], [["1","0"],["0","1"]] ] }
//! ```
//!
//! Rational entries are strings `"p/q"` (integers as `"p"`); float entries
//! are JSON numbers. Writers emit keys in sorted order, so writing a parsed
//! canonical file reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Matrix, OperatorTuple};
use crate::error::{Error, Result};
use crate::space::{Entry, Rational, Scalar, ScalarMode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleFile {
    pub d: usize,
    pub n: usize,
    pub scalar: ScalarMode,
    pub matrices: Vec<Vec<Vec<Entry>>>,
    /// Generator metadata (family, seed, reported orders); ignored on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Value>,
    /// Verdicts embedded by `generate --self-check`; ignored on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_check: Option<Value>,
}

/// A tuple loaded from disk, in whichever backend its file declares.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTuple {
    Rational(OperatorTuple<Rational>),
    Float(OperatorTuple<f64>),
}

impl AnyTuple {
    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyTuple::Rational(_) => ScalarMode::ExactRational,
            AnyTuple::Float(_) => ScalarMode::Float64,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            AnyTuple::Rational(t) => t.d(),
            AnyTuple::Float(t) => t.d(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyTuple::Rational(t) => t.n(),
            AnyTuple::Float(t) => t.n(),
        }
    }

    pub fn to_float(&self) -> OperatorTuple<f64> {
        match self {
            AnyTuple::Rational(t) => t.to_float(),
            AnyTuple::Float(t) => t.clone(),
        }
    }

    pub fn from_file(file: &TupleFile) -> Result<Self> {
        if file.matrices.len() != file.d {
            return Err(Error::Parse(format!(
                "\"d\" is {} but {} matrices are given",
                file.d,
                file.matrices.len()
            )));
        }
        for (j, m) in file.matrices.iter().enumerate() {
            if m.len() != file.n || m.iter().any(|row| row.len() != file.n) {
                return Err(Error::Parse(format!("matrix {j} is not {0}x{0}", file.n)));
            }
        }
        Ok(match file.scalar {
            ScalarMode::ExactRational => AnyTuple::Rational(build(&file.matrices)?),
            ScalarMode::Float64 => AnyTuple::Float(build(&file.matrices)?),
        })
    }

    pub fn to_file(&self) -> TupleFile {
        match self {
            AnyTuple::Rational(t) => tuple_to_file(t),
            AnyTuple::Float(t) => tuple_to_file(t),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TupleFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl From<OperatorTuple<Rational>> for AnyTuple {
    fn from(t: OperatorTuple<Rational>) -> Self {
        AnyTuple::Rational(t)
    }
}

impl From<OperatorTuple<f64>> for AnyTuple {
    fn from(t: OperatorTuple<f64>) -> Self {
        AnyTuple::Float(t)
    }
}

impl TupleFile {
    /// Canonical text: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("tuple files always serialise");
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }
}

pub fn tuple_to_file<S: Scalar>(t: &OperatorTuple<S>) -> TupleFile {
    TupleFile {
        d: t.d(),
        n: t.n(),
        scalar: S::MODE,
        matrices: t
            .matrices()
            .iter()
            .map(|m| m.to_rows().iter().map(|r| r.iter().map(Scalar::to_entry).collect()).collect())
            .collect(),
        generator: None,
        self_check: None,
    }
}

fn build<S: Scalar>(matrices: &[Vec<Vec<Entry>>]) -> Result<OperatorTuple<S>> {
    let ms = matrices
        .iter()
        .map(|m| {
            let rows = m
                .iter()
                .map(|r| r.iter().map(S::from_entry).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorTuple::new(ms)
}

/// Writes `contents` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{} has no file name", path.display())))?
        .to_string_lossy();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(|e| Error::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(format!("{}: {e}", path.display()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHIFT_PAIR: &str = r#"{"d":2,"n":2,"scalar":"rational","matrices":[[["0","1"],["0","0"]],[["1","0"],["0","1"]]]}"#;

    #[test]
    fn parses_and_roundtrips_bit_exact() {
        let t = AnyTuple::from_json(SHIFT_PAIR).unwrap();
        assert_eq!(t.mode(), ScalarMode::ExactRational);
        assert_eq!((t.d(), t.n()), (2, 2));
        let text = t.to_json();
        let again = AnyTuple::from_json(&text).unwrap();
        assert_eq!(again, t);
        assert_eq!(again.to_json(), text);
    }

    #[test]
    fn fractions_survive() {
        let src = r#"{"d":1,"n":1,"scalar":"rational","matrices":[[["-22/7"]]]}"#;
        let t = AnyTuple::from_json(src).unwrap();
        assert!(t.to_json().contains("\"-22/7\""));
    }

    #[test]
    fn float_entries_roundtrip() {
        let src = r#"{"d":1,"n":2,"scalar":"float","matrices":[[[0.1,-2.5e-17],[1e300,3.0]]]}"#;
        let t = AnyTuple::from_json(src).unwrap();
        let again = AnyTuple::from_json(&t.to_json()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn rejects_bad_shapes() {
        let wrong_d = r#"{"d":3,"n":1,"scalar":"float","matrices":[[[1.0]]]}"#;
        assert!(matches!(AnyTuple::from_json(wrong_d), Err(Error::Parse(_))));
        let wrong_n = r#"{"d":1,"n":2,"scalar":"float","matrices":[[[1.0]]]}"#;
        assert!(matches!(AnyTuple::from_json(wrong_n), Err(Error::Parse(_))));
        let truncated = &SHIFT_PAIR[..40];
        let err = AnyTuple::from_json(truncated).unwrap_err();
        assert!(err.to_string().contains("line 1 column"), "{err}");
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.json");
        write_atomic(&p, "hello").unwrap();
        write_atomic(&p, "world").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "world");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

use serde::{Deserialize, Serialize};

use crate::defect::Tolerance;
use crate::space::{Entry, ScalarMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// An operator identity or exhaustive enumeration; no sampling.
    Exact,
    /// Evaluated on a deterministic sample set.
    Sampled,
}

/// A vector on which an identity fails, and by how much.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: Vec<Entry>,
    pub identity: String,
    pub residual: f64,
}

/// Parameter echo carried by every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    /// `m` or `μ`.
    pub order: Option<usize>,
    pub p: Option<f64>,
    pub q: f64,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub horizon: Option<usize>,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        let tol = Tolerance::default();
        CheckParams {
            order: None,
            p: None,
            q: 2.0,
            seed: None,
            samples: None,
            horizon: None,
            tol_abs: tol.abs,
            tol_rel: tol.rel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub mode: CheckMode,
    pub arithmetic: ScalarMode,
    /// Worst residual over all probes, normalised to unit vectors.
    pub max_residual: f64,
    /// The witness residual as an exact rational, when computed exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Operator pair for commutativity reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    pub params: CheckParams,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, mode: CheckMode, arithmetic: ScalarMode, params: CheckParams) -> Self {
        CheckReport {
            check: check.to_string(),
            verdict: Verdict::Pass,
            mode,
            arithmetic,
            max_residual: 0.0,
            exact_residual: None,
            witness: None,
            pair: None,
            params,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_combine() {
        use Verdict::*;
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!(Pass.combine(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.combine(Fail), Fail);
    }

    #[test]
    fn serialises_lowercase() {
        let r = CheckReport::new("x", CheckMode::Sampled, ScalarMode::Float64, CheckParams::default());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["mode"], "sampled");
        assert_eq!(v["arithmetic"], "float");
        assert!(v.get("witness").is_none());
    }
}

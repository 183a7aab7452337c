use serde::{Deserialize, Serialize};

use crate::checkers::{CheckReport, Witness};
use crate::space::{Entry, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisStatus {
    /// Both defining checks passed on this tuple.
    Verified,
    /// At least one defining check did not pass; the verifier ran anyway.
    Assumed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremVerdict {
    Pass,
    Fail,
    NotApplicable,
}

/// One assertion inside a statement, e.g. constancy along one direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub label: String,
    pub passed: bool,
    pub max_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub statement_id: String,
    pub hypothesis_status: HypothesisStatus,
    pub verdict: TheoremVerdict,
    pub details: Vec<SubCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn from_checks(id: &str, status: HypothesisStatus, details: Vec<SubCheck>, notes: Vec<String>) -> Self {
        let verdict = if details.iter().all(|c| c.passed) {
            TheoremVerdict::Pass
        } else {
            TheoremVerdict::Fail
        };
        TheoremReport { statement_id: id.to_string(), hypothesis_status: status, verdict, details, notes }
    }

    pub fn not_applicable(id: &str, status: HypothesisStatus, reason: String) -> Self {
        TheoremReport {
            statement_id: id.to_string(),
            hypothesis_status: status,
            verdict: TheoremVerdict::NotApplicable,
            details: Vec::new(),
            notes: vec![reason],
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == TheoremVerdict::Pass
    }

    pub fn max_residual(&self) -> f64 {
        self.details.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.details.iter().find_map(|c| c.witness.as_ref())
    }
}

/// Every verifier run on one tuple, with the hypothesis checks they share.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub hypothesis_status: HypothesisStatus,
    pub hypotheses: Vec<CheckReport>,
    pub theorems: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn get(&self, id: &str) -> Option<&TheoremReport> {
        self.theorems.iter().find(|r| r.statement_id == id)
    }

    /// No statement failed (not-applicable ones are skipped).
    pub fn all_pass(&self) -> bool {
        self.theorems.iter().all(|r| r.verdict != TheoremVerdict::Fail)
    }
}

/// Accumulates one [`SubCheck`]: the worst residual, and the first failing
/// sample as witness.
pub(crate) struct Tally {
    check: SubCheck,
}

impl Tally {
    pub(crate) fn new(label: impl Into<String>) -> Self {
        Tally { check: SubCheck { label: label.into(), passed: true, max_residual: 0.0, witness: None } }
    }

    pub(crate) fn observe<S: Scalar>(
        &mut self,
        x: &[S],
        residual: f64,
        ok: bool,
        identity: impl FnOnce() -> String,
    ) {
        self.check.max_residual = self.check.max_residual.max(residual);
        if !ok {
            self.fail(x.iter().map(Scalar::to_entry).collect(), residual, identity);
        }
    }

    pub(crate) fn fail(&mut self, x: Vec<Entry>, residual: f64, identity: impl FnOnce() -> String) {
        self.check.passed = false;
        self.check.max_residual = self.check.max_residual.max(residual);
        if self.check.witness.is_none() {
            self.check.witness = Some(Witness { x, identity: identity(), residual });
        }
    }

    pub(crate) fn finish(self) -> SubCheck {
        self.check
    }
}

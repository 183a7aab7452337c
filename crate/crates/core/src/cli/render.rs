//! Plain-text tables for `--format text`.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::Value;

use crate::checkers::{CheckReport, Verdict};
use crate::optuple::TupleFile;
use crate::theorems::{SuiteReport, TheoremVerdict};

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn theorem_str(v: TheoremVerdict) -> &'static str {
    match v {
        TheoremVerdict::Pass => "pass",
        TheoremVerdict::Fail => "FAIL",
        TheoremVerdict::NotApplicable => "n/a",
    }
}

fn witness_str(x: &[crate::space::Entry]) -> String {
    let parts: Vec<String> = x.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn notes(s: &mut String, notes: &[String]) {
    for n in notes {
        let _ = writeln!(s, "note: {n}");
    }
}

pub(super) fn check_table(reports: &[CheckReport], verdict: Verdict, extra: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<18} {:<13} {:<8} {:<9} {:>12}  witness",
        "check", "verdict", "mode", "arith", "residual"
    );
    for r in reports {
        let mode = serde_json::to_value(r.mode).unwrap_or_default();
        let arith = serde_json::to_value(r.arithmetic).unwrap_or_default();
        let witness = match (&r.witness, r.pair) {
            (Some(w), _) => format!("{}  {}", witness_str(&w.x), w.identity),
            (None, Some([i, j])) => format!("T{i}, T{j}"),
            _ => "-".into(),
        };
        let _ = writeln!(
            s,
            "{:<18} {:<13} {:<8} {:<9} {:>12.3e}  {}",
            r.check,
            verdict_str(r.verdict),
            mode.as_str().unwrap_or("?"),
            arith.as_str().unwrap_or("?"),
            r.max_residual,
            witness
        );
    }
    let _ = writeln!(s, "verdict: {}", verdict_str(verdict));
    notes(&mut s, extra);
    s
}

pub(super) fn verify_table(suite: &SuiteReport, extra: &[String]) -> String {
    let mut s = String::new();
    let status = serde_json::to_value(suite.hypothesis_status).unwrap_or_default();
    let _ = writeln!(s, "hypotheses: {}", status.as_str().unwrap_or("?"));
    for h in &suite.hypotheses {
        let _ = writeln!(s, "  {:<16} {:<13} {:.3e}", h.check, verdict_str(h.verdict), h.max_residual);
    }
    let _ = writeln!(s, "{:<24} {:<6} {:>12}  witness", "statement", "result", "residual");
    for t in &suite.theorems {
        let witness = t.witness().map(|w| format!("{}  {}", witness_str(&w.x), w.identity));
        let _ = writeln!(
            s,
            "{:<24} {:<6} {:>12.3e}  {}",
            t.statement_id,
            theorem_str(t.verdict),
            t.max_residual(),
            witness.unwrap_or_else(|| "-".into())
        );
    }
    notes(&mut s, extra);
    s
}

pub(super) fn classify_table(body: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "hypotheses: {}  membership horizon: {}",
        body["hypothesis_status"].as_str().unwrap_or("?"),
        body["membership_horizon"]
    );
    for row in body["memberships"].as_array().into_iter().flatten() {
        let x: Vec<String> = row["x"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|e| match e {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        let cells = match row.get("violation") {
            Some(v) => format!("violation: {}", v.as_str().unwrap_or("")),
            None => format!("cells {}", row["cells"]),
        };
        let _ = writeln!(s, "[{}]  {}", x.join(", "), cells);
    }
    s
}

pub(super) fn generate_summary(files: &[&TupleFile], written: &[PathBuf]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "generated {} tuple(s)", files.len());
    for (i, f) in files.iter().enumerate() {
        let check = f
            .self_check
            .as_ref()
            .and_then(|c| c["verdict"].as_str().map(|v| format!("  self-check {v}")))
            .unwrap_or_default();
        let path = written.get(i).map(|p| format!("  -> {}", p.display())).unwrap_or_default();
        let _ = writeln!(s, "  d={} n={}{check}{path}", f.d, f.n);
    }
    s
}

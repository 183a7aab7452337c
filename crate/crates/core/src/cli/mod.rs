//! The `isotuple` command line: `check`, `verify`, `classify`, `generate`.
//!
//! Exit codes: 0 all pass, 1 some check failed, 2 inconclusive, 3 input or
//! parameter error.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checkers::{
    check_minf, check_mp_defect, check_mp_polynomial, check_mp_sampled, CheckReport, SampleConfig, Verdict,
};
use crate::defect::{default_horizon, Tolerance};
use crate::error::{Error, Result};
use crate::generators::{self, Family, GeneratorSpec};
use crate::optuple::{tuple_to_file, write_atomic, AnyTuple, OperatorTuple, TupleFile};
use crate::space::{exact_exponent, Entry, Rational, Scalar, ScalarMode};
use crate::theorems::{TheoremVerdict, Verifier, VerifierConfig};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "isotuple", version, about = "Check and explore (m,p)- and (m,inf)-isometric operator tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Commutativity, the (m,p) checks and the (mu,inf) check.
    Check(RunArgs),
    /// The full theorem suite.
    Verify(RunArgs),
    /// Orbit-norm cells containing each sample (or a given vector).
    Classify(ClassifyArgs),
    /// Write generated tuples.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    /// Tuple file.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Report file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Defaults to m.
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Ambient l^q norm. Defaults to p for the (m,p) checks and 2 for (mu,inf).
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value_t = 128)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sequence horizon N; defaults to 2m + mu + 4.
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    tol_rel: Option<f64>,
    /// Force the arithmetic backend; by default exact when possible.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated vector to classify instead of the sample set.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Membership truncation; defaults to max(m, mu) + 2.
    #[arg(long)]
    membership_horizon: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Defaults to 1 for isometry and nilpotent, 2 otherwise.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidates drawn by the random family.
    #[arg(long, default_value_t = 100)]
    budget: usize,
    /// Run `check` on every output and embed the verdicts.
    #[arg(long)]
    self_check: bool,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    /// Output file (a directory for the random family); stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Parameters echoed into every report.
#[derive(Debug, Clone, Serialize)]
struct Echo {
    m: usize,
    mu: usize,
    p: f64,
    q_mp: f64,
    q_minf: f64,
    samples: usize,
    seed: u64,
    horizon: usize,
    tol_abs: f64,
    tol_rel: f64,
    mode: Option<ModeArg>,
}

impl RunArgs {
    fn mu(&self) -> usize {
        self.mu.unwrap_or(self.m)
    }

    fn tol(&self) -> Tolerance {
        let d = Tolerance::default();
        Tolerance { abs: self.tol_abs.unwrap_or(d.abs), rel: self.tol_rel.unwrap_or(d.rel) }
    }

    fn sampling(&self) -> SampleConfig {
        SampleConfig { samples: self.samples, seed: self.seed, tol: self.tol() }
    }

    fn horizon(&self) -> usize {
        self.horizon.unwrap_or_else(|| default_horizon(self.m, self.mu()))
    }

    fn echo(&self) -> Echo {
        let tol = self.tol();
        Echo {
            m: self.m,
            mu: self.mu(),
            p: self.p,
            q_mp: self.q.unwrap_or(self.p),
            q_minf: self.q.unwrap_or(2.0),
            samples: self.samples,
            seed: self.seed,
            horizon: self.horizon(),
            tol_abs: tol.abs,
            tol_rel: tol.rel,
            mode: self.mode,
        }
    }

    fn verifier_config(&self) -> VerifierConfig {
        VerifierConfig {
            m: self.m,
            mu: self.mu(),
            p: self.p,
            samples: self.samples,
            seed: self.seed,
            horizon: Some(self.horizon()),
            membership_horizon: None,
            tol: self.tol(),
        }
    }
}

/// The tuple in the backend a command runs on.
enum Backend {
    Exact(OperatorTuple<Rational>),
    Float(OperatorTuple<f64>),
}

impl Backend {
    fn mode(&self) -> ScalarMode {
        match self {
            Backend::Exact(_) => ScalarMode::ExactRational,
            Backend::Float(_) => ScalarMode::Float64,
        }
    }
}

/// Exact when forced or when the tuple is rational and `‖·‖^p` is a
/// polynomial; floating point otherwise.
fn resolve(tuple: AnyTuple, mode: Option<ModeArg>, p: f64, q: f64, notes: &mut Vec<String>) -> Result<Backend> {
    let exact_ok = exact_exponent(p, q).is_some();
    match (mode, tuple) {
        (Some(ModeArg::Exact), _) if !exact_ok => Err(Error::ExactUnavailable(format!(
            "exact mode needs p = q even (p = {p}, q = {q})"
        ))),
        (Some(ModeArg::Exact), AnyTuple::Float(t)) => Ok(Backend::Exact(t.to_rational()?)),
        (Some(ModeArg::Float), t) => Ok(Backend::Float(t.to_float())),
        (_, AnyTuple::Rational(t)) if exact_ok => Ok(Backend::Exact(t)),
        (_, AnyTuple::Rational(t)) => {
            notes.push(format!("exact arithmetic unavailable for p = {p}, q = {q}; using float"));
            Ok(Backend::Float(t.to_float()))
        }
        (_, AnyTuple::Float(t)) => Ok(Backend::Float(t)),
    }
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn tuple_summary(d: usize, n: usize, scalar: ScalarMode) -> Value {
    json!({ "d": d, "n": n, "scalar": scalar })
}

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("reports serialise");
    let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
    s.push('\n');
    s
}

/// Commutativity, the two `(m,p)` checks and the `(μ,∞)` check.
fn check_reports<S: Scalar>(t: &OperatorTuple<S>, args: &RunArgs, q_mp: f64, q_minf: f64) -> Result<Vec<CheckReport>> {
    let validation = t.validate();
    if !validation.passed() {
        return Ok(vec![validation]);
    }
    let cfg = args.sampling();
    let t_mp = t.with_norm(q_mp)?;
    let mut reports = vec![validation, check_mp_defect(&t_mp, args.m, args.p, &cfg)?];
    if S::is_exact() && args.p == 2.0 && q_mp == 2.0 {
        let mut sampled = check_mp_sampled(&t_mp, args.m, args.p, &cfg)?;
        sampled.check = "mp_defect_sampled".into();
        reports.push(sampled);
    }
    reports.push(check_mp_polynomial(&t_mp, args.m, args.p, args.horizon(), &cfg)?);
    reports.push(check_minf(&t.with_norm(q_minf)?, args.mu(), &cfg)?);
    Ok(reports)
}

struct Outcome {
    exit: i32,
    body: String,
}

fn cmd_check(args: &RunArgs) -> Result<Outcome> {
    let tuple = AnyTuple::read(&args.input)?;
    let summary = tuple_summary(tuple.d(), tuple.n(), tuple.mode());
    let echo = args.echo();
    let mut notes = Vec::new();
    let backend = resolve(tuple, args.mode, args.p, echo.q_mp, &mut notes)?;
    let reports = match &backend {
        Backend::Exact(t) => check_reports(t, args, echo.q_mp, echo.q_minf)?,
        Backend::Float(t) => check_reports(t, args, echo.q_mp, echo.q_minf)?,
    };
    if reports.len() == 1 {
        notes.push("tuple does not commute; remaining checks skipped".into());
    }
    let verdict = reports.iter().fold(Verdict::Pass, |v, r| v.combine(r.verdict));
    let exit = verdict_exit(verdict);
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "seed": args.seed,
        "params": echo,
        "tuple": summary,
        "arithmetic": backend.mode(),
        "reports": reports,
        "verdict": verdict,
        "exit_code": exit,
        "notes": notes,
    });
    let body = match args.format {
        Format::Json => to_canonical_json(&body),
        Format::Text => render::check_table(&reports, verdict, &notes),
    };
    Ok(Outcome { exit, body })
}

fn gate(t: &AnyTuple) -> Result<()> {
    let r = match t {
        AnyTuple::Rational(t) => t.validate(),
        AnyTuple::Float(t) => t.validate(),
    };
    if r.passed() {
        Ok(())
    } else {
        let [i, j] = r.pair.unwrap_or([0, 0]);
        Err(Error::Precondition(format!(
            "operators {i} and {j} do not commute (residual {:e})",
            r.max_residual
        )))
    }
}

fn cmd_verify(args: &RunArgs) -> Result<Outcome> {
    let tuple = AnyTuple::read(&args.input)?;
    gate(&tuple)?;
    let summary = tuple_summary(tuple.d(), tuple.n(), tuple.mode());
    let q = args.q.unwrap_or(args.p);
    let mut notes = Vec::new();
    let backend = resolve(tuple, args.mode, args.p, q, &mut notes)?;
    let suite = match &backend {
        Backend::Exact(t) => Verifier::new(&t.with_norm(q)?, args.verifier_config())?.run_all()?,
        Backend::Float(t) => Verifier::new(&t.with_norm(q)?, args.verifier_config())?.run_all()?,
    };
    let exit = if suite.theorems.iter().any(|r| r.verdict == TheoremVerdict::Fail) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    };
    let mut echo = args.echo();
    echo.q_mp = q;
    echo.q_minf = q;
    let body = match args.format {
        Format::Json => to_canonical_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "seed": args.seed,
            "params": echo,
            "tuple": summary,
            "arithmetic": backend.mode(),
            "hypothesis_status": suite.hypothesis_status,
            "hypotheses": suite.hypotheses,
            "theorems": suite.theorems,
            "exit_code": exit,
            "notes": notes,
        })),
        Format::Text => render::verify_table(&suite, &notes),
    };
    Ok(Outcome { exit, body })
}

fn parse_vector<S: Scalar>(text: &str, n: usize) -> Result<Vec<S>> {
    let xs = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            match s.parse::<f64>() {
                Ok(v) if !s.contains('/') && !S::is_exact() => S::from_entry(&Entry::Number(v)),
                _ => S::from_entry(&Entry::Text(s.to_string())),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if xs.len() != n {
        return Err(Error::Shape(format!("--x has {} entries, tuple dimension is {n}", xs.len())));
    }
    Ok(xs)
}

fn classify_rows<S: Scalar>(v: &Verifier<'_, S>, given: Option<&str>, n: usize) -> Result<(Vec<Value>, bool)> {
    let xs = match given {
        Some(text) => vec![parse_vector::<S>(text, n)?],
        None => v.samples().to_vec(),
    };
    let mut rows = Vec::new();
    let mut violated = false;
    for x in &xs {
        let entries: Vec<Entry> = x.iter().map(Scalar::to_entry).collect();
        match v.classify_membership(x) {
            Ok(m) => rows.push(json!({ "x": entries, "cells": m.cells, "orbit_norm": m.orbit_norm })),
            Err(Error::TheoremViolation(msg)) => {
                violated = true;
                rows.push(json!({ "x": entries, "cells": [], "violation": msg }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((rows, violated))
}

fn cmd_classify(args: &ClassifyArgs) -> Result<Outcome> {
    let run = &args.run;
    let tuple = AnyTuple::read(&run.input)?;
    gate(&tuple)?;
    let (d, n) = (tuple.d(), tuple.n());
    let q = run.q.unwrap_or(run.p);
    let mut notes = Vec::new();
    let backend = resolve(tuple, run.mode, run.p, q, &mut notes)?;
    let mut cfg = run.verifier_config();
    cfg.membership_horizon = args.membership_horizon;
    let given = args.x.as_deref();
    let (status, rows, violated) = match &backend {
        Backend::Exact(t) => {
            let t = t.with_norm(q)?;
            let v = Verifier::new(&t, cfg)?;
            let (rows, bad) = classify_rows(&v, given, n)?;
            (v.hypothesis_status(), rows, bad)
        }
        Backend::Float(t) => {
            let t = t.with_norm(q)?;
            let v = Verifier::new(&t, cfg)?;
            let (rows, bad) = classify_rows(&v, given, n)?;
            (v.hypothesis_status(), rows, bad)
        }
    };
    let exit = if violated { EXIT_FAIL } else { EXIT_PASS };
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "seed": run.seed,
        "params": run.echo(),
        "membership_horizon": cfg.membership_horizon(),
        "tuple": tuple_summary(d, n, backend.mode()),
        "hypothesis_status": status,
        "memberships": rows,
        "exit_code": exit,
        "notes": notes,
    });
    let body = match run.format {
        Format::Json => to_canonical_json(&body),
        Format::Text => render::classify_table(&body),
    };
    Ok(Outcome { exit, body })
}

/// Runs `check` on a generated tuple with the orders it claims.
fn self_check(t: &OperatorTuple<Rational>, m: usize, mu: usize, p: f64, samples: usize, seed: u64) -> Result<Value> {
    let args = RunArgs {
        input: PathBuf::new(),
        out: None,
        format: Format::Json,
        m,
        mu: Some(mu),
        p,
        q: None,
        samples,
        seed,
        horizon: None,
        tol_abs: None,
        tol_rel: None,
        mode: None,
    };
    let echo = args.echo();
    let reports = if exact_exponent(p, echo.q_mp).is_some() {
        check_reports(t, &args, echo.q_mp, echo.q_minf)?
    } else {
        check_reports(&t.to_float(), &args, echo.q_mp, echo.q_minf)?
    };
    let verdict = reports.iter().fold(Verdict::Pass, |v, r| v.combine(r.verdict));
    Ok(json!({
        "m": m,
        "mu": mu,
        "p": p,
        "verdict": verdict,
        "checks": reports.iter().map(|r| json!({ "check": r.check, "verdict": r.verdict })).collect::<Vec<_>>(),
    }))
}

struct Generated {
    file: TupleFile,
    verdict: Option<Verdict>,
}

fn generated(
    args: &GenerateArgs,
    t: &OperatorTuple<Rational>,
    meta: Value,
    orders: (usize, usize),
) -> Result<Generated> {
    let mut file = tuple_to_file(t);
    let mut verdict = None;
    if args.self_check {
        let sc = self_check(t, orders.0, orders.1, args.p, args.samples, args.seed)?;
        verdict = Some(serde_json::from_value(sc["verdict"].clone())?);
        file.self_check = Some(sc);
    }
    file.generator = Some(meta);
    Ok(Generated { file, verdict })
}

fn cmd_generate(args: &GenerateArgs) -> Result<Outcome> {
    let family: Family = args.family.parse()?;
    let d = args.d.unwrap_or(match family {
        Family::Isometry | Family::Nilpotent => 1,
        _ => 2,
    });
    let spec = GeneratorSpec { family, n: args.n, d, m: args.m, seed: args.seed };
    spec.validate()?;
    let base = json!({ "family": family.to_string(), "n": args.n, "d": d, "m": args.m, "seed": args.seed });
    let with = |extra: Value| {
        let mut meta = base.clone();
        if let (Some(a), Some(b)) = (meta.as_object_mut(), extra.as_object()) {
            a.extend(b.clone());
        }
        meta
    };
    let outputs = match family {
        Family::Isometry => {
            let t = OperatorTuple::new(vec![generators::gen_isometry(args.n, args.seed)?])?;
            vec![generated(args, &t, with(json!({ "reported_m": 1, "reported_mu": 1 })), (1, 1))?]
        }
        Family::Nilpotent => {
            let t = OperatorTuple::new(vec![generators::gen_nilpotent(args.n, args.m, args.seed)?])?;
            vec![generated(args, &t, with(json!({ "nilpotent_order": args.m })), (args.m, args.m))?]
        }
        Family::PaperStructure => {
            let s = generators::gen_paper_structure(args.n, d, args.m, args.seed)?;
            let meta = with(json!({ "reported_m": s.m, "reported_mu": s.mu, "isometric_index": s.j0 }));
            vec![generated(args, &s.tuple, meta, (s.m, s.mu))?]
        }
        Family::Random => generators::random_search(&spec, args.budget, args.samples)?
            .into_iter()
            .map(|hit| {
                let meta = with(json!({ "candidate": hit.index, "candidate_seed": hit.seed, "budget": args.budget }));
                generated(args, &hit.tuple, meta, (args.m, args.m))
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let verdict = outputs.iter().filter_map(|g| g.verdict).fold(Verdict::Pass, Verdict::combine);
    let exit = verdict_exit(verdict);
    let mut written = Vec::new();
    let body = match (&args.out, family) {
        (Some(dir), Family::Random) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            for g in &outputs {
                let idx = g.file.generator.as_ref().and_then(|m| m["candidate"].as_u64()).unwrap_or(0);
                let path = dir.join(format!("tuple-{idx}.json"));
                write_atomic(&path, &g.file.to_json())?;
                written.push(path);
            }
            String::new()
        }
        (Some(path), _) => {
            write_atomic(path, &outputs[0].file.to_json())?;
            written.push(path.clone());
            String::new()
        }
        (None, Family::Random) => to_canonical_json(&outputs.iter().map(|g| &g.file).collect::<Vec<_>>()),
        (None, _) => outputs[0].file.to_json(),
    };
    let body = match args.format {
        Format::Json => body,
        Format::Text => render::generate_summary(&outputs.iter().map(|g| &g.file).collect::<Vec<_>>(), &written),
    };
    Ok(Outcome { exit, body })
}

fn configure_threads() {
    if let Some(n) = std::env::var("ISOTUPLE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool already exists, e.g. on a second in-process run.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) if !body.is_empty() => write_atomic(p, body),
        _ => out.write_all(body.as_bytes()).map_err(Error::from),
    }
}

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    let (outcome, report_path) = match &cli.command {
        Command::Check(a) => (cmd_check(a), a.out.clone()),
        Command::Verify(a) => (cmd_verify(a), a.out.clone()),
        Command::Classify(a) => (cmd_classify(a), a.run.out.clone()),
        // Generated tuples are written inside the command.
        Command::Generate(a) => (cmd_generate(a), None),
    };
    match outcome.and_then(|o| emit(out, report_path.as_deref(), &o.body).map(|_| o.exit)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("isotuple").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn parse_vector_accepts_fractions() {
        let v = parse_vector::<Rational>("1/2, -3", 2).unwrap();
        assert_eq!(v[0], crate::space::small_rational(1, 2));
        assert!(parse_vector::<f64>("1,2,3", 2).is_err());
        assert_eq!(parse_vector::<f64>("0.5,1/4", 2).unwrap(), vec![0.5, 0.25]);
    }

    #[test]
    fn resolve_falls_back_to_float() {
        let t: AnyTuple = OperatorTuple::<Rational>::new(vec![crate::Matrix::identity(1)]).unwrap().into();
        let mut notes = Vec::new();
        assert_eq!(resolve(t.clone(), None, 3.0, 3.0, &mut notes).unwrap().mode(), ScalarMode::Float64);
        assert_eq!(notes.len(), 1);
        assert!(resolve(t.clone(), Some(ModeArg::Exact), 3.0, 3.0, &mut notes).is_err());
        assert_eq!(resolve(t, None, 2.0, 2.0, &mut notes).unwrap().mode(), ScalarMode::ExactRational);
    }
}

//! Decision procedures for the `(m,p)` and `(μ,∞)` identities and the
//! structural lemmas built on them.

mod report;

pub use report::{CheckMode, CheckParams, CheckReport, Verdict, Witness};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defect::{alternating_sum, Comparison, DefectSequence, Tolerance};
use crate::error::{Error, Result};
use crate::multiindex::{self, MultiIndex};
use crate::optuple::{Matrix, OperatorTuple};
use crate::space::{self, exact_exponent, Scalar, ScalarMode};

/// Residuals within this relative distance of the current worst count as
/// ties and keep the earlier sample.
const TIE_REL: f64 = 1e-12;

/// Sample-set parameters shared by the sampled checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 128, seed: 0, tol: Tolerance::default() }
    }
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleConfig { samples, seed, ..Default::default() }
    }

    /// The sample vectors for tuples of this backend and norm.
    pub fn vectors<S: Scalar>(&self, t: &OperatorTuple<S>) -> Vec<Vec<S>> {
        S::sample_set(t.n(), self.samples, self.seed, t.norm_spec())
    }

    fn params(&self, order: usize, p: Option<f64>, q: f64, horizon: Option<usize>) -> CheckParams {
        CheckParams {
            order: Some(order),
            p,
            q,
            seed: Some(self.seed),
            samples: Some(self.samples),
            horizon,
            tol_abs: self.tol.abs,
            tol_rel: self.tol.rel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Borderline,
    Fail,
}

#[derive(Debug, Clone)]
struct Probe {
    residual: f64,
    status: Status,
    exact: Option<String>,
}

impl Probe {
    fn ok() -> Self {
        Probe { residual: 0.0, status: Status::Ok, exact: None }
    }

    /// Keeps the worse of two probes on the same vector.
    fn worst(self, other: Probe) -> Probe {
        if (other.status, other.residual) > (self.status, self.residual) {
            other
        } else {
            self
        }
    }
}

fn status(c: &Comparison, exact: bool) -> Status {
    if c.equal {
        Status::Ok
    } else if !exact && c.residual <= 10.0 * c.threshold {
        Status::Borderline
    } else {
        Status::Fail
    }
}

fn normalised(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("p must lie in (0, inf), got {p}")))
    }
}

/// Worst-residual-wins merge; ties go to the earliest sample.
fn merge<S: Scalar>(report: &mut CheckReport, xs: &[Vec<S>], probes: &[Probe], identity: &str) {
    let mut worst: Option<usize> = None;
    let mut witness: Option<usize> = None;
    let beats = |r: f64, best: Option<usize>| match best {
        None => true,
        Some(b) => r > probes[b].residual && r - probes[b].residual > TIE_REL * probes[b].residual,
    };
    for (i, pr) in probes.iter().enumerate() {
        if beats(pr.residual, worst) {
            worst = Some(i);
        }
        if pr.status == Status::Fail && beats(pr.residual, witness) {
            witness = Some(i);
        }
    }
    report.max_residual = worst.map_or(0.0, |i| probes[i].residual);
    let any_borderline = probes.iter().any(|pr| pr.status == Status::Borderline);
    report.verdict = if let Some(i) = witness {
        report.witness = Some(Witness {
            x: xs[i].iter().map(Scalar::to_entry).collect(),
            identity: identity.to_string(),
            residual: probes[i].residual,
        });
        report.exact_residual = probes[i].exact.clone();
        Verdict::Fail
    } else if any_borderline {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
}

/// `(m,p)` test through the defect `P_m`.
///
/// Over exact scalars with `p = q = 2` this is the operator identity
/// `Σ_k (−1)^{m−k} C(m,k) Σ_{|α|=k} (k!/α!) (T^α)ᵀ T^α = 0`, decided exactly.
/// Otherwise `|P_m(x)|` is evaluated on the sample set.
pub fn check_mp_defect<S: Scalar>(
    t: &OperatorTuple<S>,
    m: usize,
    p: f64,
    cfg: &SampleConfig,
) -> Result<CheckReport> {
    check_p(p)?;
    if S::is_exact() && p == 2.0 && t.norm_spec().q == 2.0 {
        gram_check(t, m, cfg)
    } else {
        check_mp_sampled(t, m, p, cfg)
    }
}

/// `|P_m(x)|` on the sample set, whatever the backend.
pub fn check_mp_sampled<S: Scalar>(
    t: &OperatorTuple<S>,
    m: usize,
    p: f64,
    cfg: &SampleConfig,
) -> Result<CheckReport> {
    check_p(p)?;
    let q = t.norm_spec().q;
    if S::is_exact() && exact_exponent(p, q).is_none() {
        return Err(Error::ExactUnavailable(format!("exact (m,p) test needs p = q even (p = {p}, q = {q})")));
    }
    let xs = cfg.vectors(t);
    let probes = xs
        .par_iter()
        .map(|x| {
            let seq = DefectSequence::compute(t, p, x, m)?;
            let s = seq.p_ell(m)?;
            let c = cfg.tol.vanishes(&s);
            Ok(Probe {
                residual: normalised(c.residual, seq.values[0].to_f64()),
                status: status(&c, S::is_exact()),
                exact: S::is_exact().then(|| s.value.to_entry().to_string()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new(
        "mp_defect",
        CheckMode::Sampled,
        S::MODE,
        cfg.params(m, Some(p), q, None),
    );
    merge(&mut report, &xs, &probes, &format!("P_{m}(x) = 0"));
    Ok(report)
}

/// The defect operator `Σ_k (−1)^{m−k} C(m,k) Σ_{|α|=k} (k!/α!) (T^α)ᵀ T^α`.
pub fn defect_operator<S: Scalar>(t: &OperatorTuple<S>, m: usize) -> Result<Matrix<S>> {
    let n = t.n();
    let mut d = Matrix::<S>::zeros(n, n);
    for k in 0..=m {
        let mut level = Matrix::<S>::zeros(n, n);
        for alpha in multiindex::enumerate(t.d(), k)? {
            let a = t.monomial(&alpha)?;
            if a.is_zero() {
                continue;
            }
            let gram = a.transpose().mul(&a)?;
            level = level.add(&gram.scale(&S::weight(&alpha)?))?;
        }
        let mut c = S::from_biguint(&multiindex::binomial(m as u64, k as u64));
        if (m - k) % 2 == 1 {
            c = -c;
        }
        d = d.add(&level.scale(&c))?;
    }
    Ok(d)
}

fn gram_check<S: Scalar>(t: &OperatorTuple<S>, m: usize, cfg: &SampleConfig) -> Result<CheckReport> {
    let d = defect_operator(t, m)?;
    let mut report = CheckReport::new(
        "mp_defect",
        CheckMode::Exact,
        S::MODE,
        cfg.params(m, Some(2.0), 2.0, None),
    );
    report.notes.push("exact Gram identity".into());
    report.max_residual = d.max_abs();
    if d.is_zero() {
        report.verdict = Verdict::Pass;
        return Ok(report);
    }
    // A nonzero symmetric form is nonzero on some e_i or some e_i + e_j.
    let n = t.n();
    let probe = |x: Vec<S>| -> Result<Option<(Vec<S>, S)>> {
        let dx = d.mul_vec(&x)?;
        let v = S::accumulate(x.iter().zip(&dx).map(|(a, b)| a.clone() * b.clone()));
        Ok((!v.is_zero()).then_some((x, v)))
    };
    let mut found = None;
    'outer: for i in 0..n {
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        if let Some(hit) = probe(e)? {
            found = Some(hit);
            break 'outer;
        }
    }
    if found.is_none() {
        'pairs: for i in 0..n {
            for j in (i + 1)..n {
                let mut e = vec![S::zero(); n];
                e[i] = S::one();
                e[j] = S::one();
                if let Some(hit) = probe(e)? {
                    found = Some(hit);
                    break 'pairs;
                }
            }
        }
    }
    let (x, v) = found.expect("a nonzero symmetric matrix has a nonzero probe");
    let norm2 = space::norm_power(&x, 2.0, t.norm_spec())?.to_f64();
    report.witness = Some(Witness {
        x: x.iter().map(Scalar::to_entry).collect(),
        identity: format!("P_{m}(x) = 0"),
        residual: v.abs_f64() / norm2,
    });
    report.exact_residual = Some(v.to_entry().to_string());
    report.verdict = Verdict::Fail;
    Ok(report)
}

/// `(m,p)` test through the sequence `n ↦ Q^n(x)`: passes iff its `m`-th
/// forward difference vanishes on the whole window `0..=horizon`.
pub fn check_mp_polynomial<S: Scalar>(
    t: &OperatorTuple<S>,
    m: usize,
    p: f64,
    horizon: usize,
    cfg: &SampleConfig,
) -> Result<CheckReport> {
    check_p(p)?;
    if horizon < m + 2 {
        return Err(Error::Precondition(format!("horizon {horizon} must be at least m + 2 = {}", m + 2)));
    }
    let q = t.norm_spec().q;
    if S::is_exact() && exact_exponent(p, q).is_none() {
        return Err(Error::ExactUnavailable(format!("exact (m,p) test needs p = q even (p = {p}, q = {q})")));
    }
    let xs = cfg.vectors(t);
    let probes = xs
        .par_iter()
        .map(|x| {
            let seq = DefectSequence::compute(t, p, x, horizon)?;
            let scale = seq.values[0].to_f64();
            let mut worst = Probe::ok();
            for k in 0..=(horizon - m) {
                let s = alternating_sum(&seq.values, m, k)?;
                let c = cfg.tol.vanishes(&s);
                worst = worst.worst(Probe {
                    residual: normalised(c.residual, scale),
                    status: status(&c, S::is_exact()),
                    exact: S::is_exact().then(|| s.value.to_entry().to_string()),
                });
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new(
        "mp_polynomial",
        CheckMode::Sampled,
        S::MODE,
        cfg.params(m, Some(p), q, Some(horizon)),
    );
    merge(&mut report, &xs, &probes, &format!("Δ^{m} Q^n(x) = 0 for n ≤ {}", horizon - m));
    Ok(report)
}

/// `(μ,∞)` test: the largest `‖T^α x‖` over even `|α| ≤ μ` equals the largest
/// over odd `|α| ≤ μ`, on every sample.
///
/// Exact scalars with an even integer `q` compare `‖·‖^q` exactly; anything
/// else compares floating-point norms of the normalised vector.
pub fn check_minf<S: Scalar>(t: &OperatorTuple<S>, mu: usize, cfg: &SampleConfig) -> Result<CheckReport> {
    if mu == 0 {
        return Err(Error::Parameter("mu must be >= 1".into()));
    }
    let spec = *t.norm_spec();
    let exact_q = exact_exponent(spec.q, spec.q).filter(|_| S::is_exact());
    let alphas = multiindex::enumerate_up_to(t.d(), mu)?;
    let xs = cfg.vectors(t);
    let probes = xs
        .par_iter()
        .map(|x| {
            let images = alphas
                .iter()
                .map(|a| Ok((a.order() % 2 == 0, t.apply_monomial(a, x)?)))
                .collect::<Result<Vec<_>>>()?;
            let scale = space::norm(x, &spec);
            if exact_q.is_some() {
                let mut even = S::zero();
                let mut odd = S::zero();
                for (is_even, y) in &images {
                    let v = S::norm_power(y, spec.q, &spec)?;
                    let slot = if *is_even { &mut even } else { &mut odd };
                    if v > *slot {
                        *slot = v;
                    }
                }
                let root = |v: &S| v.to_f64().powf(1.0 / spec.q);
                let residual = normalised((root(&even) - root(&odd)).abs(), scale);
                Ok(Probe {
                    residual,
                    status: if even == odd { Status::Ok } else { Status::Fail },
                    exact: None,
                })
            } else {
                let (mut even, mut odd) = (0.0f64, 0.0f64);
                for (is_even, y) in &images {
                    let v = normalised(space::norm(y, &spec), scale);
                    if *is_even {
                        even = even.max(v);
                    } else {
                        odd = odd.max(v);
                    }
                }
                let c = cfg.tol.compare(&even, &odd);
                Ok(Probe { residual: c.residual, status: status(&c, false), exact: None })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let arithmetic = if exact_q.is_some() { S::MODE } else { ScalarMode::Float64 };
    let mut report = CheckReport::new("minf", CheckMode::Sampled, arithmetic, cfg.params(mu, None, spec.q, None));
    merge(&mut report, &xs, &probes, &format!("max even |α| ≤ {mu} = max odd |α| ≤ {mu}"));
    Ok(report)
}

/// Whether `T^α` counts as the zero operator: exactly, or entrywise within
/// `tol.abs` in floating point.
pub fn negligible<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> bool {
    if S::is_exact() {
        m.is_zero()
    } else {
        m.max_abs() <= tol.abs
    }
}

/// `|γ'_j| = |γ| − γ_j`.
fn deleted_order(gamma: &MultiIndex, j: usize) -> usize {
    gamma.order() - gamma.entries()[j]
}

/// Every `γ` with `|γ| ≤ 2dm` and `|γ'_j| ≥ m` for all `j` must give `T^γ = 0`.
pub fn check_annihilation<S: Scalar>(t: &OperatorTuple<S>, m: usize, tol: &Tolerance) -> Result<CheckReport> {
    let d = t.d();
    if d < 2 {
        return Err(Error::NotApplicable("annihilation needs d >= 2".into()));
    }
    if m == 0 {
        return Err(Error::Parameter("m must be >= 1".into()));
    }
    let bound = 2 * d * m;
    let params = CheckParams {
        order: Some(m),
        q: t.norm_spec().q,
        horizon: Some(bound),
        tol_abs: tol.abs,
        tol_rel: tol.rel,
        ..CheckParams::default()
    };
    let mut report = CheckReport::new("annihilation", CheckMode::Exact, S::MODE, params);
    let mut worst: Option<(f64, MultiIndex, usize)> = None;
    let mut checked = 0usize;
    for k in 0..=bound {
        for gamma in multiindex::enumerate(d, k)? {
            if (0..d).any(|j| deleted_order(&gamma, j) < m) {
                continue;
            }
            checked += 1;
            let a = t.monomial(&gamma)?;
            if negligible(&a, tol) {
                report.max_residual = report.max_residual.max(a.max_abs());
                continue;
            }
            let r = a.max_abs();
            if worst.as_ref().is_none_or(|(w, _, _)| r > *w) {
                let col = (0..a.cols())
                    .max_by(|&x, &y| {
                        let cx = (0..a.rows()).map(|i| a.get(i, x).abs_f64()).fold(0.0, f64::max);
                        let cy = (0..a.rows()).map(|i| a.get(i, y).abs_f64()).fold(0.0, f64::max);
                        cx.total_cmp(&cy).then(y.cmp(&x))
                    })
                    .expect("n >= 1");
                worst = Some((r, gamma, col));
            }
        }
    }
    report.notes.push(format!("{checked} multi-indices with |γ| ≤ {bound}"));
    if let Some((r, gamma, col)) = worst {
        let mut e = vec![S::zero(); t.n()];
        e[col] = S::one();
        report.max_residual = report.max_residual.max(r);
        report.witness = Some(Witness {
            x: e.iter().map(Scalar::to_entry).collect(),
            identity: format!("T^{gamma} = 0"),
            residual: r,
        });
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Every nonzero monomial of order at most `max_order`, each with the first
/// `j_0` satisfying `|α'_{j_0}| ≤ m − 1` (or `None` when there is none).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialForm {
    pub terms: Vec<(MultiIndex, Option<usize>)>,
    /// Nonzero monomials with no admissible `j_0`.
    pub violations: Vec<MultiIndex>,
}

impl MonomialForm {
    pub fn index_of(&self, alpha: &MultiIndex) -> Option<Option<usize>> {
        self.terms.iter().find(|(a, _)| a == alpha).map(|(_, j)| *j)
    }
}

pub fn nonzero_monomial_form<S: Scalar>(
    t: &OperatorTuple<S>,
    m: usize,
    max_order: usize,
) -> Result<MonomialForm> {
    let tol = Tolerance::default();
    let mut terms = Vec::new();
    let mut violations = Vec::new();
    for alpha in multiindex::enumerate_up_to(t.d(), max_order)? {
        if negligible(&*t.monomial(&alpha)?, &tol) {
            continue;
        }
        let j0 = (0..t.d()).find(|&j| deleted_order(&alpha, j) < m);
        if j0.is_none() {
            violations.push(alpha.clone());
        }
        terms.push((alpha, j0));
    }
    Ok(MonomialForm { terms, violations })
}

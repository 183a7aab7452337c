//! Verifiers for the consequences of being simultaneously `(m,p)`- and
//! `(μ,∞)`-isometric: eventual constancy of power orbits, the isometric
//! power tuple, the quasi-polynomial form of `Q^n`, the norm dichotomy for
//! `T_j^m`, the orbit-norm partition, the two-operator dichotomy and the rank
//! consequences.

mod report;

pub use report::{HypothesisStatus, SubCheck, SuiteReport, TheoremReport, TheoremVerdict};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkers::{self, check_annihilation, check_minf, check_mp_defect, negligible, CheckReport, SampleConfig};
use crate::defect::{self, default_horizon, q_reduced, q_value, Tolerance};
use crate::error::{Error, Result};
use crate::multiindex::{self, MultiIndex};
use crate::optuple::{operator_norm, Matrix, NormBound, OperatorTuple};
use crate::space::{exact_exponent, Entry, Scalar};
use report::Tally;

pub const EVENTUAL_CONSTANCY: &str = "eventual_constancy";
pub const MIXED_CONSTANCY: &str = "mixed_constancy";
pub const POWER_TUPLE: &str = "power_tuple_1p";
pub const SUM_ISOMETRY: &str = "sum_isometry";
pub const QUASI_POLYNOMIAL: &str = "quasi_polynomial";
pub const OPNORM_DICHOTOMY: &str = "opnorm_dichotomy";
pub const PARTITION: &str = "partition";
pub const PAIR_DICHOTOMY: &str = "pair_dichotomy";
pub const RANK_COROLLARY: &str = "rank_corollary";
pub const NEWTON_FORM: &str = "newton_form";
pub const ANNIHILATION: &str = "annihilation";
pub const REDUCED_FORMULA: &str = "reduced_formula";
pub const ORBIT_MAX: &str = "orbit_max";

/// Largest `n` at which the Newton form is compared against `Q^n`.
pub const NEWTON_HORIZON: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifierConfig {
    pub m: usize,
    pub mu: usize,
    pub p: f64,
    pub samples: usize,
    pub seed: u64,
    /// Sequence horizon `N`; defaults to `2m + μ + 4`.
    pub horizon: Option<usize>,
    /// Truncation for membership tests; defaults to `max(m, μ) + 2`.
    pub membership_horizon: Option<usize>,
    pub tol: Tolerance,
}

impl VerifierConfig {
    pub fn new(m: usize, mu: usize, p: f64) -> Self {
        VerifierConfig {
            m,
            mu,
            p,
            samples: SampleConfig::default().samples,
            seed: 0,
            horizon: None,
            membership_horizon: None,
            tol: Tolerance::default(),
        }
    }

    pub fn with_samples(mut self, samples: usize, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    pub fn horizon(&self) -> usize {
        self.horizon.unwrap_or_else(|| default_horizon(self.m, self.mu))
    }

    pub fn membership_horizon(&self) -> usize {
        self.membership_horizon.unwrap_or(self.m.max(self.mu) + 2)
    }

    pub fn sampling(&self) -> SampleConfig {
        SampleConfig { samples: self.samples, seed: self.seed, tol: self.tol }
    }
}

/// Orbit-norm cells containing one vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    /// Every `j` with `|T_j^n x|_∞ = |x|_∞` for `n ≤ horizon`.
    pub cells: Vec<usize>,
    pub orbit_norm: f64,
    pub horizon: usize,
}

/// Runs the theorem verifiers on one tuple over a fixed sample set.
///
/// Construction runs the two defining checks; their outcome becomes the
/// `hypothesis_status` of every report. Verifiers run regardless, so a tuple
/// that fails its hypotheses serves as a negative control.
pub struct Verifier<'a, S: Scalar> {
    t: &'a OperatorTuple<S>,
    cfg: VerifierConfig,
    xs: Vec<Vec<S>>,
    hypotheses: Vec<CheckReport>,
    status: HypothesisStatus,
}

impl<'a, S: Scalar> Verifier<'a, S> {
    pub fn new(t: &'a OperatorTuple<S>, cfg: VerifierConfig) -> Result<Self> {
        if cfg.m == 0 || cfg.mu == 0 {
            return Err(Error::Parameter("m and mu must be >= 1".into()));
        }
        let q = t.norm_spec().q;
        if S::is_exact() && exact_exponent(cfg.p, q).is_none() {
            return Err(Error::ExactUnavailable(format!(
                "exact verification needs p = q even (p = {}, q = {q})",
                cfg.p
            )));
        }
        let sampling = cfg.sampling();
        let hypotheses = vec![check_mp_defect(t, cfg.m, cfg.p, &sampling)?, check_minf(t, cfg.mu, &sampling)?];
        let status = if hypotheses.iter().all(CheckReport::passed) {
            HypothesisStatus::Verified
        } else {
            HypothesisStatus::Assumed
        };
        Ok(Verifier { t, cfg, xs: sampling.vectors(t), hypotheses, status })
    }

    pub fn hypothesis_status(&self) -> HypothesisStatus {
        self.status
    }

    pub fn hypotheses(&self) -> &[CheckReport] {
        &self.hypotheses
    }

    pub fn samples(&self) -> &[Vec<S>] {
        &self.xs
    }

    pub fn config(&self) -> &VerifierConfig {
        &self.cfg
    }

    /// `‖v‖^q` in exact arithmetic, `‖v‖` in floating point: the quantity
    /// compared whenever two norms must agree.
    fn size(&self, v: &[S]) -> Result<S> {
        let spec = self.t.norm_spec();
        if S::is_exact() {
            S::norm_power(v, spec.q, spec)
        } else {
            S::norm_power(v, 1.0, spec)
        }
    }

    /// Compares two quantities that scale like `size(x)`; the residual is
    /// normalised by `scale`.
    fn same(&self, a: &S, b: &S, scale: &S) -> (f64, bool) {
        let c = self.cfg.tol.compare(a, b);
        let s = scale.to_f64();
        (if s > 0.0 { c.residual / s } else { c.residual }, c.equal)
    }

    fn report(&self, id: &str, details: Vec<SubCheck>, notes: Vec<String>) -> TheoremReport {
        TheoremReport::from_checks(id, self.status, details, notes)
    }

    fn power(&self, j: usize, k: usize) -> Result<std::sync::Arc<Matrix<S>>> {
        self.t.monomial(&MultiIndex::axis(self.t.d(), j, k)?)
    }

    fn need_pair(&self, what: &str) -> Result<()> {
        if self.t.d() < 2 {
            Err(Error::NotApplicable(format!("{what} needs d >= 2")))
        } else {
            Ok(())
        }
    }

    /// `‖T_j^n y‖ = ‖T_j^m y‖` for `m ≤ n ≤ N`, starting from `y`.
    fn constancy(&self, tally: &mut Tally, x: &[S], y: Vec<S>, j: usize, label: &str) -> Result<()> {
        let (m, horizon) = (self.cfg.m, self.cfg.horizon());
        let scale = self.size(x)?;
        let tj = self.t.matrix(j)?;
        let mut v = y;
        let mut reference = None;
        for n in 0..=horizon {
            if n == m {
                reference = Some(self.size(&v)?);
            } else if let Some(r) = &reference {
                let (res, ok) = self.same(&self.size(&v)?, r, &scale);
                tally.observe(x, res, ok, || format!("‖T{j}^{n} {label}‖ = ‖T{j}^{m} {label}‖"));
            }
            if n < horizon {
                v = tj.mul_vec(&v)?;
            }
        }
        Ok(())
    }

    /// `n ↦ ‖T_j^n x‖` is constant for `n ≥ m`, for every `j`.
    pub fn verify_eventual_constancy(&self) -> Result<TheoremReport> {
        let mut details = Vec::new();
        for j in 0..self.t.d() {
            let mut tally = Tally::new(format!("T{j}"));
            for x in &self.xs {
                self.constancy(&mut tally, x, x.clone(), j, "x")?;
            }
            details.push(tally.finish());
        }
        Ok(self.report(EVENTUAL_CONSTANCY, details, Vec::new()))
    }

    /// `n ↦ ‖T_j^n (T'_j)^κ x‖` is constant for `n ≥ m`, `1 ≤ |κ| ≤ m−1`.
    pub fn verify_mixed_constancy(&self) -> Result<TheoremReport> {
        self.need_pair("mixed constancy")?;
        let d = self.t.d();
        let kappas: Vec<MultiIndex> = multiindex::enumerate_up_to(d - 1, self.cfg.m - 1)?
            .into_iter()
            .filter(|k| !k.is_zero())
            .collect();
        if kappas.is_empty() {
            return Ok(self.report(MIXED_CONSTANCY, Vec::new(), vec!["vacuous: no κ with 1 ≤ |κ| ≤ m−1".into()]));
        }
        let mut details = Vec::new();
        for j in 0..d {
            for kappa in &kappas {
                let alpha = kappa.insert_at(j, 0)?;
                let mut tally = Tally::new(format!("T{j}, κ = {kappa}"));
                for x in &self.xs {
                    let y = self.t.apply_monomial(&alpha, x)?;
                    self.constancy(&mut tally, x, y, j, &format!("T^{alpha} x"))?;
                }
                details.push(tally.finish());
            }
        }
        Ok(self.report(MIXED_CONSTANCY, details, Vec::new()))
    }

    /// `Σ_j ‖T_j^m x‖^p = ‖x‖^p`, and the power tuple passes the `(1,p)` check.
    pub fn verify_power_tuple_1p(&self) -> Result<TheoremReport> {
        let (m, p) = (self.cfg.m, self.cfg.p);
        let spec = self.t.norm_spec();
        let powers = (0..self.t.d()).map(|j| self.power(j, m)).collect::<Result<Vec<_>>>()?;
        let mut direct = Tally::new("Σ_j ‖T_j^m x‖^p = ‖x‖^p");
        for x in &self.xs {
            let lhs = S::accumulate(
                powers
                    .iter()
                    .map(|a| S::norm_power(&a.mul_vec(x)?, p, spec))
                    .collect::<Result<Vec<_>>>()?,
            );
            let rhs = S::norm_power(x, p, spec)?;
            let (res, ok) = self.same(&lhs, &rhs, &rhs);
            direct.observe(x, res, ok, || format!("Σ_j ‖T_j^{m} x‖^p = ‖x‖^p"));
        }
        let direct = direct.finish();
        let inner = check_mp_defect(&self.t.power_tuple(m)?, 1, p, &self.cfg.sampling())?;
        let mut notes = vec![format!("power tuple (1,p) check: {:?}", inner.verdict).to_lowercase()];
        if inner.passed() != direct.passed {
            notes.push("power tuple check and direct summation disagree".into());
        }
        let via_check = SubCheck {
            label: "power tuple (1,p) check".into(),
            passed: inner.passed(),
            max_residual: inner.max_residual,
            witness: inner.witness.clone().or_else(|| {
                (!inner.passed()).then(|| checkers::Witness {
                    x: Vec::new(),
                    identity: "P_1 = 0 on the power tuple".into(),
                    residual: inner.max_residual,
                })
            }),
        };
        Ok(self.report(POWER_TUPLE, vec![direct, via_check], notes))
    }

    /// `Σ_j T_j^{n_j}` is an isometry whenever every `n_j ≥ m`.
    pub fn verify_sum_isometry(&self, exponents: &[usize]) -> Result<TheoremReport> {
        let m = self.cfg.m;
        if exponents.len() != self.t.d() {
            return Err(Error::Parameter(format!("{} exponents for a {}-tuple", exponents.len(), self.t.d())));
        }
        if let Some(j) = exponents.iter().position(|&e| e < m) {
            return Err(Error::Precondition(format!("exponent n_{j} = {} is below m = {m}", exponents[j])));
        }
        let mut sum = Matrix::<S>::zeros(self.t.n(), self.t.n());
        for (j, &e) in exponents.iter().enumerate() {
            sum = sum.add(&*self.power(j, e)?)?;
        }
        let label = format!("Σ_j T_j^n_j, n = {exponents:?}");
        let mut tally = Tally::new(label.clone());
        for x in &self.xs {
            let sx = self.size(x)?;
            let (res, ok) = self.same(&self.size(&sum.mul_vec(x)?)?, &sx, &sx);
            tally.observe(x, res, ok, || format!("‖({label}) x‖ = ‖x‖"));
        }
        Ok(self.report(SUM_ISOMETRY, vec![tally.finish()], Vec::new()))
    }

    /// Default exponents `(m, m+1, …, m+d−1)`.
    pub fn default_exponents(&self) -> Vec<usize> {
        (0..self.t.d()).map(|j| self.cfg.m + j).collect()
    }

    /// For `2m−1 ≤ n ≤ N`:
    /// `Q^n(x) = Σ_{1≤|β|≤m−1} (n^{(|β|)}/β!) Σ_j ‖T_j^m (T'_j)^β x‖^p + Σ_j ‖T_j^n x‖^p`.
    pub fn verify_quasipolynomial(&self) -> Result<TheoremReport> {
        self.need_pair("the quasi-polynomial form")?;
        let (m, p, horizon) = (self.cfg.m, self.cfg.p, self.cfg.horizon());
        if horizon + 1 < 2 * m {
            return Err(Error::Precondition(format!("horizon {horizon} is below 2m−1")));
        }
        let d = self.t.d();
        let spec = self.t.norm_spec();
        let betas: Vec<MultiIndex> = multiindex::enumerate_up_to(d - 1, m - 1)?
            .into_iter()
            .filter(|b| !b.is_zero())
            .collect();
        let mut tally = Tally::new(format!("Q^n quasi-polynomial, {} ≤ n ≤ {horizon}", 2 * m - 1));
        for x in &self.xs {
            // ‖T_j^m (T'_j)^β x‖^p, independent of n.
            let mut mixed = Vec::new();
            for beta in &betas {
                let mut terms = Vec::new();
                for j in 0..d {
                    let alpha = beta.insert_at(j, m)?;
                    terms.push(S::norm_power(&self.t.apply_monomial(&alpha, x)?, p, spec)?);
                }
                mixed.push((beta.order(), beta.multinomial(), S::accumulate(terms)));
            }
            let scale = S::norm_power(x, p, spec)?;
            for n in (2 * m - 1)..=horizon {
                let mut terms = Vec::new();
                for (order, multinomial, value) in &mixed {
                    let w = multiindex::binomial(n as u64, *order as u64) * multinomial;
                    let mut v = value.clone();
                    v *= &S::from_biguint(&w);
                    terms.push(v);
                }
                for j in 0..d {
                    terms.push(S::norm_power(&self.t.apply_monomial(&MultiIndex::axis(d, j, n)?, x)?, p, spec)?);
                }
                let rhs = S::accumulate(terms);
                let lhs = q_value(self.t, p, x, n)?;
                let (res, ok) = self.same(&lhs, &rhs, &scale);
                tally.observe(x, res, ok, || format!("Q^{n}(x) = quasi-polynomial form at n = {n}"));
            }
        }
        Ok(self.report(QUASI_POLYNOMIAL, vec![tally.finish()], Vec::new()))
    }

    /// `q_reduced(n) = q_value(n)` for `2m−1 ≤ n ≤ 2m+4`.
    pub fn verify_reduced_formula(&self) -> Result<TheoremReport> {
        self.need_pair("the reduced formula")?;
        let (m, p) = (self.cfg.m, self.cfg.p);
        let spec = self.t.norm_spec();
        let mut tally = Tally::new(format!("reduced Q^n, {} ≤ n ≤ {}", 2 * m - 1, 2 * m + 4));
        for x in &self.xs {
            let scale = S::norm_power(x, p, spec)?;
            for n in (2 * m - 1)..=(2 * m + 4) {
                let (res, ok) = self.same(&q_reduced(self.t, p, x, n, m)?, &q_value(self.t, p, x, n)?, &scale);
                tally.observe(x, res, ok, || format!("reduced Q^{n}(x) = Q^{n}(x)"));
            }
        }
        Ok(self.report(REDUCED_FORMULA, vec![tally.finish()], Vec::new()))
    }

    /// `Σ_k n^{(k)} P_k(x)/k!` reproduces `Q^n(x)` for `n ≤ max(N, 20)`.
    pub fn verify_newton_form(&self) -> Result<TheoremReport> {
        let (m, p) = (self.cfg.m, self.cfg.p);
        let top = self.cfg.horizon().max(NEWTON_HORIZON);
        let mut tally = Tally::new(format!("Newton form, n ≤ {top}"));
        for x in &self.xs {
            let coeffs = defect::newton_coefficients(self.t, p, x, m)?;
            for n in 0..=top {
                let q = q_value(self.t, p, x, n)?;
                let (res, ok) = self.same(&defect::newton_evaluate(&coeffs, n), &q, &q);
                tally.observe(x, res, ok, || format!("Newton form at n = {n}"));
            }
        }
        Ok(self.report(NEWTON_FORM, vec![tally.finish()], Vec::new()))
    }

    /// Each `T_j^m` is zero or has operator norm one.
    pub fn verify_opnorm_dichotomy(&self) -> Result<TheoremReport> {
        let m = self.cfg.m;
        let spec = self.t.norm_spec();
        let mut details = Vec::new();
        let mut notes = Vec::new();
        for j in 0..self.t.d() {
            let a = self.power(j, m)?;
            let mut tally = Tally::new(format!("T{j}^{m} = 0 or ‖T{j}^{m}‖ = 1"));
            if negligible(&a, &self.cfg.tol) {
                notes.push(format!("T{j}^{m} = 0"));
            } else {
                let on = operator_norm(&a, spec, self.cfg.samples.max(64), self.cfg.seed);
                if on.bound == NormBound::LowerBound {
                    notes.push(format!("‖T{j}^{m}‖ ≥ {} (sampled lower bound)", on.value));
                } else {
                    notes.push(format!("‖T{j}^{m}‖ = {}", on.value));
                }
                let res = (on.value - 1.0).abs();
                if res > self.cfg.tol.threshold(1.0) {
                    tally.fail(column_witness(&a), res, || format!("‖T{j}^{m}‖ = 1"));
                } else {
                    tally.observe::<S>(&[], res, true, String::new);
                }
            }
            details.push(tally.finish());
        }
        Ok(self.report(OPNORM_DICHOTOMY, details, notes))
    }

    /// `max_{|α| ≤ k} size(T^α y)`.
    fn orbit_size(&self, y: &[S], k: usize) -> Result<S> {
        let mut best = S::zero();
        for alpha in multiindex::enumerate_up_to(self.t.d(), k)? {
            let v = self.size(&self.t.apply_monomial(&alpha, y)?)?;
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// The cells `X_j` containing `x`: every `j` with `|T_j^n x|_∞ = |x|_∞`
    /// for `n` up to the membership horizon.
    pub fn membership(&self, x: &[S]) -> Result<Membership> {
        let (mu, horizon) = (self.cfg.mu, self.cfg.membership_horizon());
        let reference = self.orbit_size(x, mu - 1)?;
        let mut cells = Vec::new();
        for j in 0..self.t.d() {
            let tj = self.t.matrix(j)?;
            let mut y = x.to_vec();
            let mut member = true;
            for n in 0..=horizon {
                if !self.same(&self.orbit_size(&y, mu - 1)?, &reference, &reference).1 {
                    member = false;
                    break;
                }
                if n < horizon {
                    y = tj.mul_vec(&y)?;
                }
            }
            if member {
                cells.push(j);
            }
        }
        Ok(Membership { cells, orbit_norm: defect::infty_norm(self.t, x, mu)?, horizon })
    }

    /// [`membership`](Self::membership), treating an empty cell set under
    /// verified hypotheses as a theorem violation.
    pub fn classify_membership(&self, x: &[S]) -> Result<Membership> {
        let m = self.membership(x)?;
        if m.cells.is_empty() && self.status == HypothesisStatus::Verified {
            return Err(Error::TheoremViolation(format!(
                "vector {:?} lies in no orbit-norm cell",
                x.iter().map(Scalar::to_entry).collect::<Vec<_>>()
            )));
        }
        Ok(m)
    }

    /// Every sample lies in at least one cell `X_j`.
    pub fn verify_partition(&self) -> Result<TheoremReport> {
        let mut tally = Tally::new("every sample lies in some X_j");
        let mut counts = vec![0usize; self.t.d()];
        for x in &self.xs {
            let mem = self.membership(x)?;
            for &j in &mem.cells {
                counts[j] += 1;
            }
            let empty = mem.cells.is_empty();
            tally.observe(x, if empty { 1.0 } else { 0.0 }, !empty, || "x ∈ ∪_j X_j".into());
        }
        let notes = vec![format!("samples per cell: {counts:?}")];
        Ok(self.report(PARTITION, vec![tally.finish()], notes))
    }

    /// For `d = 2`: exactly one of `T_1^m = 0 ∧ T_2^m` isometric, or the
    /// mirrored statement.
    pub fn verify_pair_dichotomy(&self) -> Result<TheoremReport> {
        if self.t.d() != 2 {
            return Err(Error::NotApplicable("the pair dichotomy needs d = 2".into()));
        }
        let m = self.cfg.m;
        let mut zero = [false; 2];
        let mut iso = [true; 2];
        let mut iso_checks = Vec::new();
        let mut powers = Vec::new();
        for j in 0..2 {
            let a = self.power(j, m)?;
            zero[j] = negligible(&a, &self.cfg.tol);
            let mut tally = Tally::new(format!("T{j}^{m} isometric"));
            for x in &self.xs {
                let sx = self.size(x)?;
                let (res, ok) = self.same(&self.size(&a.mul_vec(x)?)?, &sx, &sx);
                tally.observe(x, res, ok, || format!("‖T{j}^{m} x‖ = ‖x‖"));
            }
            let check = tally.finish();
            iso[j] = check.passed;
            iso_checks.push(check);
            powers.push(a);
        }
        let first = zero[0] && iso[1];
        let second = zero[1] && iso[0];
        let mut verdict = Tally::new("exactly one of (T0^m = 0, T1^m isometric) and (T1^m = 0, T0^m isometric)");
        if first == second {
            // Blame the power that should have vanished in the likelier role.
            let j = if iso[1] || !iso[0] { 0 } else { 1 };
            verdict.fail(column_witness(&powers[j]), powers[j].max_abs(), || format!("T{j}^{m} = 0"));
        }
        let notes = vec![format!("zero powers: {zero:?}, isometric powers: {iso:?}")];
        Ok(self.report(PAIR_DICHOTOMY, vec![verdict.finish()], notes))
    }

    /// A full-rank `T_j` is isometric (as is `T_j^m`) and every other
    /// `T_k^m` vanishes; the kernels intersect trivially.
    pub fn verify_rank_corollary(&self) -> Result<TheoremReport> {
        let (m, n) = (self.cfg.m, self.t.n());
        let ranks: Vec<usize> = self.t.matrices().iter().map(S::rank).collect();
        let kernels: Vec<usize> = ranks.iter().map(|r| n - r).collect();
        let mut notes = vec![format!("kernel dimensions: {kernels:?}")];
        let mut details = Vec::new();

        let stacked = Matrix::vstack(self.t.matrices())?;
        let mut kernel = Tally::new("∩_j N(T_j) = {0}");
        if S::rank(&stacked) < n {
            kernel.fail(Vec::new(), (n - S::rank(&stacked)) as f64, || "joint kernel is trivial".into());
        }
        details.push(kernel.finish());

        let full: Vec<usize> = (0..self.t.d()).filter(|&j| ranks[j] == n).collect();
        if full.is_empty() {
            notes.push("no operator has full rank; both branches skipped".into());
        }
        for &j in &full {
            for (k, label) in [(1, format!("T{j} isometric")), (m, format!("T{j}^{m} isometric"))] {
                let a = self.power(j, k)?;
                let mut tally = Tally::new(label);
                for x in &self.xs {
                    let sx = self.size(x)?;
                    let (res, ok) = self.same(&self.size(&a.mul_vec(x)?)?, &sx, &sx);
                    tally.observe(x, res, ok, || format!("‖T{j}^{k} x‖ = ‖x‖"));
                }
                details.push(tally.finish());
            }
            for k in (0..self.t.d()).filter(|&k| k != j) {
                let a = self.power(k, m)?;
                let mut tally = Tally::new(format!("T{k}^{m} = 0"));
                if !negligible(&a, &self.cfg.tol) {
                    tally.fail(column_witness(&a), a.max_abs(), || format!("T{k}^{m} = 0"));
                }
                details.push(tally.finish());
            }
        }
        Ok(self.report(RANK_COROLLARY, details, notes))
    }

    /// Monomials with every single-coordinate deletion of order `≥ m` vanish.
    pub fn verify_annihilation(&self) -> Result<TheoremReport> {
        let r = check_annihilation(self.t, self.cfg.m, &self.cfg.tol)?;
        let check = SubCheck {
            label: format!("T^γ = 0 whenever every |γ'_j| ≥ {}", self.cfg.m),
            passed: r.passed(),
            max_residual: r.max_residual,
            witness: r.witness.clone(),
        };
        Ok(self.report(ANNIHILATION, vec![check], r.notes))
    }

    /// `max_{|α| ≤ μ+3} ‖T^α x‖` is attained at some `|α| ≤ μ−1`.
    pub fn verify_orbit_max(&self) -> Result<TheoremReport> {
        let mu = self.cfg.mu;
        let mut tally = Tally::new(format!("orbit max over |α| ≤ {} attained at |α| ≤ {}", mu + 3, mu - 1));
        for x in &self.xs {
            let scale = self.size(x)?;
            let (res, ok) = self.same(&self.orbit_size(x, mu + 3)?, &self.orbit_size(x, mu - 1)?, &scale);
            tally.observe(x, res, ok, || format!("max |α| ≤ {} = max |α| ≤ {}", mu + 3, mu - 1));
        }
        Ok(self.report(ORBIT_MAX, vec![tally.finish()], Vec::new()))
    }

    /// Every statement, in a fixed order; those whose dimension condition
    /// fails are reported as not applicable.
    pub fn run_all(&self) -> Result<SuiteReport> {
        type Job<'v, 'a, S> = (&'static str, Box<dyn Fn(&Verifier<'a, S>) -> Result<TheoremReport> + Sync + 'v>);
        let exponents = self.default_exponents();
        let jobs: Vec<Job<'_, 'a, S>> = vec![
            (EVENTUAL_CONSTANCY, Box::new(|v| v.verify_eventual_constancy())),
            (MIXED_CONSTANCY, Box::new(|v| v.verify_mixed_constancy())),
            (POWER_TUPLE, Box::new(|v| v.verify_power_tuple_1p())),
            (SUM_ISOMETRY, Box::new(move |v| v.verify_sum_isometry(&exponents))),
            (QUASI_POLYNOMIAL, Box::new(|v| v.verify_quasipolynomial())),
            (OPNORM_DICHOTOMY, Box::new(|v| v.verify_opnorm_dichotomy())),
            (PARTITION, Box::new(|v| v.verify_partition())),
            (PAIR_DICHOTOMY, Box::new(|v| v.verify_pair_dichotomy())),
            (RANK_COROLLARY, Box::new(|v| v.verify_rank_corollary())),
            (NEWTON_FORM, Box::new(|v| v.verify_newton_form())),
            (ANNIHILATION, Box::new(|v| v.verify_annihilation())),
            (REDUCED_FORMULA, Box::new(|v| v.verify_reduced_formula())),
            (ORBIT_MAX, Box::new(|v| v.verify_orbit_max())),
        ];
        let theorems = jobs
            .par_iter()
            .map(|(id, job)| match job(self) {
                Err(Error::NotApplicable(why)) => Ok(TheoremReport::not_applicable(id, self.status, why)),
                other => other,
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SuiteReport { hypothesis_status: self.status, hypotheses: self.hypotheses.clone(), theorems })
    }
}

/// Basis vector on the column of `a` with the largest entry.
fn column_witness<S: Scalar>(a: &Matrix<S>) -> Vec<Entry> {
    let col_max = |c: usize| (0..a.rows()).map(|i| a.get(i, c).abs_f64()).fold(0.0, f64::max);
    let mut best = 0;
    for c in 1..a.cols() {
        if col_max(c) > col_max(best) {
            best = c;
        }
    }
    (0..a.cols()).map(|c| S::from_i64((c == best) as i64).to_entry()).collect()
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

// A NaN residual must fail `ensure!`, hence the negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::time::{Duration, Instant};

use common::{shift_pair, identity_rational, int, orbit_norms_by_order, p_words, sq_norm};
use isotuple::checkers::{
    check_annihilation, check_minf, check_mp_defect, check_mp_polynomial, CheckMode, SampleConfig, Verdict,
};
use isotuple::defect::{newton_coefficients, newton_evaluate, q_reduced, q_value, Tolerance};
use isotuple::generators::{gen_paper_structure, random_tuple};
use isotuple::space::Entry;
use isotuple::theorems::{
    TheoremVerdict, Verifier, VerifierConfig, EVENTUAL_CONSTANCY, MIXED_CONSTANCY, OPNORM_DICHOTOMY,
    POWER_TUPLE, QUASI_POLYNOMIAL, SUM_ISOMETRY,
};
use isotuple::{Matrix, OperatorTuple, Rational, Scalar};
use num::Zero;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: isotuple::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// A tuple known to be `(m,2)`- and `(μ,∞)`-isometric.
struct Conforming {
    label: String,
    tuple: OperatorTuple<Rational>,
    m: usize,
    mu: usize,
}

fn conforming() -> Vec<Conforming> {
    let mut out = vec![Conforming { label: "shift pair".into(), tuple: shift_pair(), m: 2, mu: 2 }];
    let params = [(2, 2, 1), (3, 2, 2), (4, 2, 3), (4, 3, 2), (5, 3, 3), (6, 3, 3), (6, 2, 2), (5, 2, 3), (3, 3, 1), (6, 3, 2)];
    for (seed, &(n, d, m)) in params.iter().enumerate() {
        let s = gen_paper_structure(n, d, m, seed as u64).expect("feasible structure");
        out.push(Conforming { label: format!("structure n={n} d={d} m={m} seed={seed}"), tuple: s.tuple, m: s.m, mu: s.mu });
    }
    out
}

fn samples(t: &OperatorTuple<Rational>) -> Vec<Vec<Rational>> {
    SampleConfig::new(48, 5).vectors(t)
}

fn is_basis_vector(x: &[Entry]) -> bool {
    let nonzero: Vec<&Entry> = x.iter().filter(|e| e.to_string() != "0").collect();
    nonzero.len() == 1 && nonzero[0].to_string() == "1"
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = shift_pair::<Rational>();
    let r = ok(check_mp_defect(&t, 2, 2.0, &SampleConfig::default()))?;
    ensure!(r.verdict == Verdict::Pass && r.mode == CheckMode::Exact, "Gram check: {:?} {:?}", r.verdict, r.mode);
    ensure!(r.max_residual == 0.0, "Gram residual {}", r.max_residual);

    let cfg = SampleConfig::new(1000, 0);
    let exact = ok(check_minf(&t, 2, &cfg))?;
    let float = ok(check_minf(&shift_pair::<f64>(), 2, &cfg))?;
    for r in [&exact, &float] {
        ensure!(r.verdict == Verdict::Pass, "minf {:?} ({:?})", r.verdict, r.arithmetic);
        ensure!(r.max_residual <= 1e-12, "minf residual {}", r.max_residual);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("Gram residual 0, minf residual {:.1e} over 1000 samples, {elapsed:.2?}", float.max_residual))
}

const CHAIN: [&str; 6] = [EVENTUAL_CONSTANCY, MIXED_CONSTANCY, POWER_TUPLE, SUM_ISOMETRY, QUASI_POLYNOMIAL, OPNORM_DICHOTOMY];

fn chain<S: Scalar>(c: &Conforming, t: &OperatorTuple<S>) -> Result<f64, String> {
    let v = ok(Verifier::new(t, VerifierConfig::new(c.m, c.mu, 2.0).with_samples(48, 5)))?;
    let reports = [
        ok(v.verify_eventual_constancy())?,
        ok(v.verify_mixed_constancy())?,
        ok(v.verify_power_tuple_1p())?,
        ok(v.verify_sum_isometry(&v.default_exponents()))?,
        ok(v.verify_quasipolynomial())?,
        ok(v.verify_opnorm_dichotomy())?,
    ];
    let mut worst = 0.0f64;
    for (id, r) in CHAIN.iter().zip(&reports) {
        ensure!(r.statement_id == *id, "unexpected statement {}", r.statement_id);
        ensure!(r.verdict == TheoremVerdict::Pass, "{}: {id} {:?}", c.label, r.verdict);
        worst = worst.max(r.max_residual());
    }
    Ok(worst)
}

fn criterion_2(set: &[Conforming]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for c in set {
        ensure!(c.tuple.d() <= 3 && c.tuple.n() <= 6 && c.m <= 3, "{} out of range", c.label);
        chain(c, &c.tuple)?;
        let float = chain(c, &c.tuple.to_float())?;
        ensure!(float <= 1e-9, "{}: float residual {float:e}", c.label);
        worst = worst.max(float);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{} tuples, exact and float, worst float residual {worst:.1e}, {elapsed:.2?}", set.len()))
}

fn criterion_3() -> Outcome {
    let cfg = SampleConfig::new(64, 3);
    let (mut tuples, mut pass_counts) = (0usize, [0usize; 3]);
    for i in 0..60u64 {
        let (n, d) = (1 + (i % 3) as usize, 1 + ((i / 3) % 3) as usize);
        // Even seeds draw commuting tuples.
        let seed = 2 * i;
        let t = ok(random_tuple(n, d, seed))?;
        ensure!(t.validate().passed(), "seed {seed} does not commute");
        tuples += 1;
        let xs = cfg.vectors(&t);
        for m in 1..=3 {
            let defect = ok(check_mp_defect(&t, m, 2.0, &cfg))?;
            let poly = ok(check_mp_polynomial(&t, m, 2.0, 2 * m + 4, &cfg))?;
            ensure!(defect.verdict == poly.verdict, "seed {seed} m={m}: defect {:?} vs polynomial {:?}", defect.verdict, poly.verdict);
            // Word-sum oracle on the same sample set.
            let oracle = xs.iter().all(|x| p_words(&t, x, m).is_zero());
            ensure!(oracle == defect.passed(), "seed {seed} m={m}: oracle {oracle} vs {:?}", defect.verdict);
            if defect.passed() {
                pass_counts[m - 1] += 1;
            }
        }
    }
    Ok(format!("{tuples} tuples, 0 disagreements, passing per m {pass_counts:?}"))
}

fn criterion_4() -> Outcome {
    let cfg = SampleConfig::new(64, 0);
    let two = ok(OperatorTuple::<Rational>::new(vec![identity_rational(3).scale(&int(2))]))?;
    for m in 1..=3u32 {
        let r = ok(check_mp_defect(&two, m as usize, 2.0, &cfg))?;
        ensure!(r.verdict == Verdict::Fail, "2I passed m={m}");
        let w = r.witness.as_ref().ok_or("2I: no witness")?;
        ensure!(is_basis_vector(&w.x), "2I m={m}: witness {:?} is not a basis vector", w.x);
        let expected = 3f64.powi(m as i32);
        ensure!((w.residual - expected).abs() <= 1e-10 * expected, "2I m={m}: residual {} vs {expected}", w.residual);
    }
    let jordan = ok(OperatorTuple::<Rational>::new(vec![ok(Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]))?]))?;
    for mu in 1..=4 {
        let r = ok(check_minf(&jordan, mu, &cfg))?;
        ensure!(r.verdict == Verdict::Fail, "I+N passed minf mu={mu}");
    }
    // ‖(I+N)^n e_2‖² = 1 + n² by direct multiplication.
    let mut v = vec![int(0), int(1)];
    for n in 1..=30i64 {
        v = vec![&v[0] + &v[1], v[1].clone()];
        ensure!(sq_norm(&v) >= int(n * n), "orbit at n={n} below n");
    }
    Ok("2I fails m=1..3 with residual 3^m at a basis vector; I+N fails mu=1..4, orbit >= n".into())
}

fn criterion_5(set: &[Conforming]) -> Outcome {
    let mut checked = 0usize;
    for c in set {
        for x in samples(&c.tuple) {
            let coeffs = ok(newton_coefficients(&c.tuple, 2.0, &x, c.m))?;
            for n in 0..=20 {
                ensure!(newton_evaluate(&coeffs, n) == ok(q_value(&c.tuple, 2.0, &x, n))?, "{}: n={n}", c.label);
            }
            checked += 1;
        }
        let tf = c.tuple.to_float();
        for x in SampleConfig::new(48, 5).vectors(&tf) {
            let coeffs = ok(newton_coefficients(&tf, 2.0, &x, c.m))?;
            for n in 0..=20 {
                let (a, b) = (newton_evaluate(&coeffs, n), ok(q_value(&tf, 2.0, &x, n))?);
                ensure!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{} float n={n}: {a} vs {b}", c.label);
            }
        }
    }
    Ok(format!("{checked} exact samples, n <= 20, exact equality; float within 1e-10"))
}

fn criterion_6(set: &[Conforming]) -> Outcome {
    for c in set {
        let r = ok(check_annihilation(&c.tuple, c.m, &Tolerance::default()))?;
        ensure!(r.verdict == Verdict::Pass && r.mode == CheckMode::Exact, "{}: annihilation {:?}", c.label, r.verdict);
        ensure!(r.max_residual == 0.0, "{}: annihilation residual {}", c.label, r.max_residual);
        for x in samples(&c.tuple) {
            for n in (2 * c.m - 1)..=(2 * c.m + 4) {
                let reduced = ok(q_reduced(&c.tuple, 2.0, &x, n, c.m))?;
                ensure!(reduced == ok(q_value(&c.tuple, 2.0, &x, n))?, "{}: reduced formula n={n}", c.label);
            }
        }
    }
    Ok(format!("{} tuples: annihilation exact, reduced formula exact on 2m-1..2m+4", set.len()))
}

fn is_isometry(m: &Matrix<Rational>) -> bool {
    m.transpose().mul(m).map(|g| g == identity_rational(m.rows())).unwrap_or(false)
}

fn criterion_7(set: &[Conforming]) -> Outcome {
    let mut pairs = 0;
    for c in set.iter().filter(|c| c.tuple.d() == 2) {
        pairs += 1;
        let powers: Vec<Matrix<Rational>> = c.tuple.matrices().iter().map(|a| a.pow(c.m).unwrap()).collect();
        let zero = powers.iter().filter(|p| p.is_zero()).count();
        let iso = powers.iter().filter(|p| is_isometry(p)).count();
        ensure!(zero == 1 && iso == 1, "{}: {zero} zero and {iso} isometric m-th powers", c.label);

        let v = ok(Verifier::new(&c.tuple, VerifierConfig::new(c.m, c.mu, 2.0).with_samples(48, 5)))?;
        let r = ok(v.verify_pair_dichotomy())?;
        ensure!(r.verdict == TheoremVerdict::Pass, "{}: pair dichotomy {:?}", c.label, r.verdict);
        for x in v.samples() {
            let cell = ok(v.classify_membership(x))?;
            ensure!(!cell.cells.is_empty(), "{}: empty membership", c.label);
        }
    }
    ensure!(pairs > 0, "no d = 2 tuples");
    Ok(format!("{pairs} pairs: one zero and one isometric m-th power; memberships nonempty"))
}

fn criterion_8(set: &[Conforming]) -> Outcome {
    for c in set {
        let tf = c.tuple.to_float();
        for x in SampleConfig::new(48, 5).vectors(&tf) {
            let by_order = orbit_norms_by_order(&tf, &x, c.mu + 3);
            let max_upto = |k: usize| by_order[..=k].iter().flatten().copied().fold(0.0f64, f64::max);
            let (all, low) = (max_upto(c.mu + 3), max_upto(c.mu.saturating_sub(1)));
            ensure!(all - low <= 1e-12, "{}: max {all} at order > mu-1 (low {low})", c.label);
            let lib = ok(isotuple::defect::orbit_max(&tf, &x, c.mu + 3))?;
            ensure!((lib - max_upto(c.mu + 3)).abs() <= 1e-12, "{}: orbit_max {lib} disagrees", c.label);
        }
    }
    Ok(format!("{} tuples: orbit max over |alpha| <= mu+3 attained by |alpha| <= mu-1", set.len()))
}

fn main() {
    let set = conforming();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 shift pair conformance", criterion_1()),
        ("2 main chain", criterion_2(&set)),
        ("3 checker equivalence", criterion_3()),
        ("4 negative controls", criterion_4()),
        ("5 Newton form", criterion_5(&set)),
        ("6 annihilation and reduced formula", criterion_6(&set)),
        ("7 pair dichotomy", criterion_7(&set)),
        ("8 orbit max location", criterion_8(&set)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

use isotuple::generators::gen_paper_structure;
use isotuple::theorems::{Verifier, VerifierConfig};

fn main() -> isotuple::Result<()> {
    let s = gen_paper_structure(6, 3, 3, 11)?;
    println!("d={} n={} isometric T_{} reported m={} mu={}", s.tuple.d(), s.tuple.n(), s.j0, s.m, s.mu);

    let v = Verifier::new(&s.tuple, VerifierConfig::new(s.m, s.mu, 2.0).with_samples(32, 0))?;
    let suite = v.run_all()?;
    println!("hypotheses {:?}", suite.hypothesis_status);
    for r in &suite.theorems {
        println!("  {:<20} {:?}", r.statement_id, r.verdict);
    }
    println!("all pass: {}", suite.all_pass());
    Ok(())
}
// $ cargo run --release --example theorem_suite

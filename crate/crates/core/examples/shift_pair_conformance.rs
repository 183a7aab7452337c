// Shift plus identity on C^2: (2,2)- and (2,inf)-isometric, not (1,2).
use isotuple::checkers::{check_minf, check_mp_defect, check_mp_polynomial, SampleConfig};
use isotuple::{Matrix, OperatorTuple, Rational};

fn fmt_x(x: &[isotuple::space::Entry]) -> String {
    format!("({})", x.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
}

fn main() -> isotuple::Result<()> {
    let t = OperatorTuple::<Rational>::new(vec![
        Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])?,
        Matrix::identity(2),
    ])?;
    let cfg = SampleConfig::default();

    println!("{:<14} {}", "commutativity", t.validate().passed());
    for m in 1..=3 {
        let exact = check_mp_defect(&t, m, 2.0, &cfg)?;
        let seq = check_mp_polynomial(&t, m, 2.0, 10, &cfg)?;
        let w = exact.witness.as_ref().map(|w| format!("witness {}", fmt_x(&w.x))).unwrap_or_default();
        println!("m={m}  gram {:?}  sequence {:?}  {w}", exact.verdict, seq.verdict);
    }
    println!("minf mu=2      {:?}", check_minf(&t, 2, &cfg)?.verdict);
    Ok(())
}
// $ cargo run --example shift_pair_conformance
// commutativity  true
// m=1  gram Fail  sequence Fail  witness (0, 1)
// m=2  gram Pass  sequence Pass
// m=3  gram Pass  sequence Pass
// minf mu=2      Pass

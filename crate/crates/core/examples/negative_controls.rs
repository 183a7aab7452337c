// 2I is no m-isometry for any m, and I + N has unbounded orbits.
use isotuple::checkers::{check_minf, check_mp_defect, SampleConfig};
use isotuple::{Matrix, OperatorTuple, Rational, Scalar};

fn main() -> isotuple::Result<()> {
    let cfg = SampleConfig::new(32, 0);
    let two = OperatorTuple::<Rational>::new(vec![Matrix::identity(2).scale(&Scalar::from_i64(2))])?;
    for m in 1..=3 {
        let r = check_mp_defect(&two, m, 2.0, &cfg)?;
        let w = r.witness.expect("2I always fails");
        println!("2I  m={m}  {:?}  residual {}  at ({})", r.verdict, w.residual,
                 w.x.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "));
    }

    let jordan = OperatorTuple::<Rational>::new(vec![Matrix::from_i64_rows(&[&[1, 1], &[0, 1]])?])?;
    for mu in 1..=4 {
        println!("I+N mu={mu}  {:?}", check_minf(&jordan, mu, &cfg)?.verdict);
    }
    let x: Vec<Rational> = vec![Scalar::from_i64(0), Scalar::from_i64(1)];
    let orbit = jordan.power_orbit(0, &x, 6)?;
    println!("|(I+N)^n e_2| = {orbit:?}");
    Ok(())
}
// $ cargo run --example negative_controls
// 2I  m=1  Fail  residual 3  at (1, 0)
// 2I  m=2  Fail  residual 9  at (1, 0)
// 2I  m=3  Fail  residual 27  at (1, 0)

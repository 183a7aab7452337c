use isotuple::defect::{forward_difference, newton_coefficients, newton_evaluate, q_reduced, q_value, DefectSequence};
use isotuple::{Matrix, OperatorTuple, Rational, Scalar};

fn main() -> isotuple::Result<()> {
    let t = OperatorTuple::<Rational>::new(vec![
        Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])?,
        Matrix::identity(2),
    ])?;
    let x: Vec<Rational> = vec![Scalar::from_i64(0), Scalar::from_i64(1)];

    let seq = DefectSequence::compute(&t, 2.0, &x, 6)?;
    let qs: Vec<String> = seq.values.iter().map(|v| v.to_string()).collect();
    println!("Q^n      {}", qs.join(" "));
    for ell in 0..4 {
        println!("P_{ell}      {}", seq.p_ell(ell)?.value);
    }
    let d2 = forward_difference(&seq.values, 2)?;
    println!("diff^2   {}", d2.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));

    // Newton form from P_0, P_1.
    let c = newton_coefficients(&t, 2.0, &x, 2)?;
    println!("newton Q^10 = {}, direct = {}", newton_evaluate(&c, 10), q_value(&t, 2.0, &x, 10)?);
    println!("reduced Q^5 = {}", q_reduced(&t, 2.0, &x, 5, 2)?);
    Ok(())
}
// $ cargo run --example defect_sequence
// Q^n      1 2 3 4 5 6 7
// P_0      1
// P_1      1
// P_2      0
// P_3      0
// diff^2   0 0 0 0 0
// newton Q^10 = 11, direct = 11
// reduced Q^5 = 6

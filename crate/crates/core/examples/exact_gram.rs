// For p = 2 the defect P_m is a quadratic form; its Gram matrix decides
// (m,2)-isometry without sampling.
use isotuple::checkers::defect_operator;
use isotuple::{Matrix, OperatorTuple, Rational};

fn show(label: &str, m: &Matrix<Rational>) {
    let rows: Vec<String> = m.to_rows().iter().map(|r| {
        r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }).collect();
    println!("{label}: [{}]", rows.join("; "));
}

fn main() -> isotuple::Result<()> {
    let shift = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])?;
    let t = OperatorTuple::<Rational>::new(vec![shift, Matrix::identity(2)])?;
    for m in 1..=3 {
        show(&format!("D_{m}"), &defect_operator(&t, m)?);
    }

    // A Jordan block J(1) alone is (3,2)-isometric.
    let j = OperatorTuple::<Rational>::new(vec![Matrix::from_i64_rows(&[&[1, 1], &[0, 1]])?])?;
    for m in 1..=3 {
        show(&format!("J D_{m}"), &defect_operator(&j, m)?);
    }
    Ok(())
}
// $ cargo run --example exact_gram
// D_1: [0 0; 0 1]
// D_2: [0 0; 0 0]
// D_3: [0 0; 0 0]
// J D_1: [0 1; 1 1]
// J D_2: [0 0; 0 2]
// J D_3: [0 0; 0 0]

// With d = 2 one operator is an isometry on each orbit and the other
// eventually vanishes there.
use isotuple::theorems::{Verifier, VerifierConfig, PAIR_DICHOTOMY, PARTITION};
use isotuple::{Matrix, OperatorTuple, Rational};

fn main() -> isotuple::Result<()> {
    let t = OperatorTuple::<Rational>::new(vec![
        Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])?,
        Matrix::identity(2),
    ])?;
    let v = Verifier::new(&t, VerifierConfig::new(2, 2, 2.0).with_samples(16, 0))?;
    for x in v.samples().iter().take(4) {
        let cell = v.classify_membership(x)?;
        let xs: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        println!("x = ({})  cells {:?}", xs.join(", "), cell.cells);
    }
    println!("{PARTITION}: {:?}", v.verify_partition()?.verdict);
    println!("{PAIR_DICHOTOMY}: {:?}", v.verify_pair_dichotomy()?.verdict);
    Ok(())
}
// $ cargo run --example pair_dichotomy

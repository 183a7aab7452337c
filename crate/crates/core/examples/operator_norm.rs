use isotuple::optuple::{operator_norm, spectral_norm};
use isotuple::space::NormSpec;
use isotuple::Matrix;

fn main() -> isotuple::Result<()> {
    let j = Matrix::<f64>::from_i64_rows(&[&[1, 1], &[0, 1]])?;
    println!("spectral |J| = {:.6}", spectral_norm(&j, 0));
    for q in [1.0, 2.0, 3.0, 4.0] {
        let r = operator_norm(&j, &NormSpec::new(q, 2)?, 256, 0);
        println!("l^{q}: {:.6} ({:?})", r.value, r.bound);
    }
    Ok(())
}
// $ cargo run --example operator_norm

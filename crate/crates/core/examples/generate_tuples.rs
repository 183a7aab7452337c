use isotuple::generators::{gen_isometry, gen_nilpotent, gen_paper_structure};
use isotuple::optuple::tuple_to_file;
use isotuple::{AnyTuple, OperatorTuple};

fn main() -> isotuple::Result<()> {
    let u = gen_isometry(4, 3)?;
    println!("signed permutation: {:?}", u.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let n = gen_nilpotent(5, 3, 3)?;
    println!("nilpotent order 3: N^2 zero {}, N^3 zero {}", n.pow(2)?.is_zero(), n.pow(3)?.is_zero());

    let s = gen_paper_structure(5, 3, 2, 9)?;
    let mut file = tuple_to_file(&s.tuple);
    file.generator = Some(serde_json::json!({ "family": "paper-structure", "seed": 9 }));
    let text = file.to_json();
    let back = AnyTuple::from_json(&text)?;
    println!("round trip d={} n={} equal {}", back.d(), back.n(), back == AnyTuple::from(s.tuple.clone()));

    let one = OperatorTuple::new(vec![u])?;
    println!("isometry validates: {}", one.validate().passed());
    Ok(())
}
// $ cargo run --example generate_tuples

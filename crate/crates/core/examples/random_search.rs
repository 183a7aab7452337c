use isotuple::generators::{random_search, Family, GeneratorSpec};

fn main() -> isotuple::Result<()> {
    for m in 1..=3 {
        let spec = GeneratorSpec { family: Family::Random, n: 2, d: 2, m, seed: 1 };
        let hits = random_search(&spec, 200, 32)?;
        let idx: Vec<usize> = hits.iter().map(|h| h.index).collect();
        println!("m={m}  {} of 200 candidates are ({m},2)- and ({m},inf)-isometric: {idx:?}", hits.len());
    }
    Ok(())
}
// $ cargo run --release --example random_search

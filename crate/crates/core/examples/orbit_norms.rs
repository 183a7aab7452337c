// The orbit maximum over all |alpha| <= k stops growing past mu - 1.
use isotuple::defect::{infty_norm, orbit_max};
use isotuple::generators::gen_paper_structure;
use isotuple::space::sample_unit_sphere;

fn main() -> isotuple::Result<()> {
    let s = gen_paper_structure(6, 3, 3, 4)?;
    let t = s.tuple.to_float();
    for (i, x) in sample_unit_sphere(0, 4, t.norm_spec()).iter().enumerate() {
        let maxes: Vec<String> = (0..=s.mu + 3)
            .map(|k| orbit_max(&t, x, k).map(|v| format!("{v:.6}")))
            .collect::<Result<_, _>>()?;
        println!("x{i}: |x|_inf = {:.6}  max by order {}", infty_norm(&t, x, s.mu)?, maxes.join(" "));
    }
    Ok(())
}
// $ cargo run --example orbit_norms

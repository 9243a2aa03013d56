// Builds an injective map of `Z^2` into `T^2` that sends the set into every
// box of a small plan, then prints the certificates. Each power of 7 gives
// the later stages a witness outside the subgroup built so far.
use torus_dense::densify::{densify, enumerate_neighborhoods, DensifyOptions};
use torus_dense::group::GroupPresentation;
use torus_dense::torus::Arc;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = GroupPresentation::free(2);
    let mut set = Vec::new();
    for e in (0..=8u32).rev() {
        let p = 7i64.pow(e);
        for v in [[p, 0], [0, p], [p, 2 * p]] {
            set.push(g.element_i64(&v)?);
        }
    }
    let family = vec![Arc::from_ratios((0, 1), (1, 2))?, Arc::from_ratios((1, 2), (1, 2))?];
    let plan = enumerate_neighborhoods(2, &family, 2, 6)?;
    let out = densify(&g, &set, &plan, DensifyOptions::default())?;
    for c in &out.certificates {
        println!("stage {} ({}): φ{} = {} in {}", c.stage, c.kind, c.witness, c.image, plan.neighborhoods()[c.stage]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

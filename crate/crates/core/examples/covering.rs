// Covering radius of a finite point set on `T^2` and its propagation to `nS`.
use torus_dense::certify::{covering_radius, propagation_check};
use torus_dense::solver::TorusVector;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let points: Vec<TorusVector> = (0..400)
        .map(|i| format!("[{}/400 + ({i})*sqrt(2); ({i})*sqrt(3)]", i).parse())
        .collect::<Result<_, _>>()?;
    let cov = covering_radius(&points, 2, 64, None)?;
    println!("{} of {} cells hit, radius <= {:.4}", cov.cells_hit(), cov.hit_table.len(), cov.max_gap);
    for n in [2, 3] {
        println!("n = {n}: {:?}", propagation_check(&points, 2, n, cov.max_gap, 64)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

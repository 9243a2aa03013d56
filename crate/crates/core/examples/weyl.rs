// Squares in `Z` sent densely into the circle, checked end to end.
use torus_dense::config::JobConfig;
use torus_dense::pipeline::{certify_report, describe, run_densify};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = JobConfig::weyl(1000, 16, 512);
    let run = run_densify(&cfg)?;
    println!("{}", describe(&run));
    let summary = certify_report(&run.text(), &cfg)?;
    println!("re-checked {} certificates", summary.certificates);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

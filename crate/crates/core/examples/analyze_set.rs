// `|nS|` for a set inside `(Z/2)^10 ⊕ Z`, where doubling collapses everything.
use torus_dense::config::JobConfig;
use torus_dense::pipeline::run_analyze;

const JOB: &str = r#"
k = 1
budget = 4

[group]
free_rank = 1
invariant_factors = [2, 2, 2, 2, 2, 2, 2, 2, 2, 2]

[set]
kind = "torsion_fiber"
free = [1]

[arcs]
kind = "grid"
count = 4
length = "1/2"
"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = JobConfig::from_toml(JOB)?;
    cfg.max_n = 3;
    let (rep, _) = run_analyze(&cfg)?;
    for (n, size) in &rep.per_n {
        println!("|{n}S| = {size}");
    }
    println!("collapses at {:?}", rep.collapses);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

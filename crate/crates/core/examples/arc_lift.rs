// Picks an `m`-th root of a torus point inside an arc while dodging one value.
use torus_dense::torus::{solve_arc, Arc, TorusElement};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let arc = Arc::from_ratios((1, 10), (1, 2))?;
    let z = TorusElement::from_ratio(1, 3);
    let avoid = TorusElement::from_ratio(2, 5);
    for m in 5..=8i64 {
        for n in 1..m {
            let y = solve_arc(&arc, &z, &avoid, &m.into(), &n.into())?;
            assert_eq!(y.scale_i64(m), z);
            assert_ne!(y.scale_i64(n), avoid);
            assert!(arc.contains(&y));
        }
        let y = solve_arc(&arc, &z, &avoid, &m.into(), &1.into())?;
        println!("m = {m}: {y} lies in {arc} and {m}·y = {z}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

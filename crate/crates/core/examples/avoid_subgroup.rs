// Points in a box of `T^2` avoiding a finitely generated subgroup.
use torus_dense::solver::{avoid_free, avoid_with_lift, member_t, TorusSubgroup, TorusVector};
use torus_dense::torus::{Arc, IrrationalBasis};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let arcs = vec![Arc::from_ratios((0, 1), (1, 2))?, Arc::from_ratios((1, 4), (2, 3))?];
    let k: TorusSubgroup = TorusSubgroup::new(2, vec!["[1/3; 1/2]".parse()?, "[0; sqrt(2)]".parse()?]);

    let mut basis = IrrationalBasis::with_allocated(1);
    let f = avoid_free(&arcs, &k, &[], &mut basis)?;
    println!("free point {f}, order {}", k.order_of(&f));

    let f_prime: TorusVector = "[2/3; 0]".parse()?;
    let lift = avoid_with_lift(&arcs, &k, &f_prime, &5.into())?;
    for n in 1..5 {
        assert!(!member_t(&lift.f.scale_i64(n), &k));
    }
    println!("5·{} = {f_prime}, and no smaller multiple lies in K", lift.f);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

// Arithmetic in `Z ⊕ Z/4 ⊕ Z/12` and in a group given by relations.
use num_bigint::BigInt;
use torus_dense::group::GroupPresentation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = GroupPresentation::new(1, vec![4.into(), 12.into()])?;
    let a = g.element_i64(&[3, 1, 5])?;
    let b = g.element_i64(&[-1, 3, 7])?;
    let sum = g.add(&a, &b)?;
    println!("{g}: {a} + {b} = {sum}");
    println!("order of (0, 1, 5) is {}", g.element_order(&g.element_i64(&[0, 1, 5])?)?);

    let h = g.span(&[g.element_i64(&[2, 0, 6])?])?;
    let x = g.element_i64(&[1, 0, 3])?;
    println!("(1, 0, 3) has order {} modulo <(2, 0, 6)>", g.order_in_quotient(&x, &h)?);
    assert!(g.member(&g.scale(&BigInt::from(4), &x)?, &h)?);

    // Z^2 / <(2, 4)> is Z ⊕ Z/2.
    let (q, map) = GroupPresentation::from_relations(2, &[vec![2.into(), 4.into()]])?;
    println!("Z^2/<(2, 4)> = {q}; (1, 2) maps to {}", map.apply(&q, &[1.into(), 2.into()])?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

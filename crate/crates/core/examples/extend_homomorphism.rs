// Extends an embedding of `<4>` in `Z/24` to `<4, 3>`.
use torus_dense::extension::{Extension, HomSpec};
use torus_dense::group::GroupPresentation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = GroupPresentation::new(0, vec![24.into()])?;
    let el = |n: i64| g.element_i64(&[n]);
    let psi = HomSpec::new(vec![el(4)?], vec![el(20)?]);
    let ext = Extension {
        domain: &g,
        codomain: &g,
        psi: &psi,
        k_star: &psi.images,
        x: el(3)?,
        x_star: el(15)?,
        m: 4.into(),
    };
    let report = ext.check();
    println!("preconditions: {report:?}");
    let phi = ext.extend()?;
    assert!(phi.is_injective(&g, &g));
    for n in [1, 3, 7] {
        let (h, j) = ext.decompose(&el(n)?)?;
        println!("{n} = {h} + {j}·3 maps to {}", phi.evaluate(&g, &g, &el(n)?).expect("in domain"));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

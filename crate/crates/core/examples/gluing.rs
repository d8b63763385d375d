// Gluing two families at a common endpoint.

use evofam::diagnostics::{semigroup_residual, GridSpec};
use evofam::evolution::{glue, make_radial, make_rotation};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let first = make_radial(0.0, 1.0)?;
    let second = make_rotation(1.0, 2.0, |t| 3.0 * t)?;
    let glued = glue(&first, &second)?;
    println!("{} on [{}, {}]", glued.label(), glued.start(), glued.end());

    // across the seam: rotate after shrinking
    let z = Complex64::new(0.4, 0.0);
    let across = glued.eval(&0.5, &1.5, z)?;
    let manual = second.eval(&1.0, &1.5, first.eval(&0.5, &1.0, z)?)?;
    println!("ω_(0.5,1.5)({z}) = {across:.6}, composed by hand {manual:.6}");
    assert!((across - manual).norm() < 1e-15);

    let residual = semigroup_residual(&glued, &GridSpec::default())?;
    println!("EF3 residual of the glued family: {residual:.2e}");

    let misfit = make_rotation(1.5, 2.0, |t| t)?;
    match glue(&first, &misfit) {
        Err(e) => println!("mismatched intervals: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gluing example");
}

// The radial family `ω_{s,t}(z) = e^{s−t} z` and its axiom residuals.

use evofam::diagnostics::{diagonal_residual, hyperbolic_bound_sup, non_constancy, semigroup_residual, GridSpec};
use evofam::evolution::{make_radial, make_rotation};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let radial = make_radial(0.0, 1.0)?;
    let z = Complex64::new(0.5, 0.25);
    let w = radial.eval(&0.2, &0.7, z)?;
    println!("ω_(0.2,0.7)({z}) = {w:.6} (expected {:.6})", z * (-0.5f64).exp());

    let grid = GridSpec::default();
    for family in [radial, make_rotation(0.0, 1.0, |t| t * t)?] {
        let ef1 = non_constancy(&family, &grid)?;
        let ef2 = diagonal_residual(&family, &grid)?;
        let ef3 = semigroup_residual(&family, &grid)?;
        let hyp = hyperbolic_bound_sup(&family, &grid, 1e-6)?;
        println!(
            "{}: EF1 witness {:.3e}, EF2 {ef2:.1e}, EF3 {ef3:.1e}, sup |ω(0)| = {}",
            family.label(),
            ef1.min_witness,
            hyp.sup
        );
        assert!(ef1.passed && ef2 < 1e-12 && ef3 < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("radial example");
}

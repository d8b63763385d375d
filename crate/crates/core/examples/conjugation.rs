// Conjugating a family so that every transition fixes the origin.

use evofam::evolution::{conjugate_to_fix_origin, make_mobius_conjugated, make_radial, Trajectory};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let base = make_radial(0.0, 1.0)?;
    let moved = make_mobius_conjugated(&base, Trajectory::new(|t: &f64| Ok(Complex64::from_polar(0.5, *t))))?;
    let origin = Complex64::new(0.0, 0.0);
    println!("{}: ω_(0,1)(0) = {:.6}", moved.label(), moved.eval(&0.0, &1.0, origin)?);

    let z0 = Complex64::new(0.2, 0.1);
    let (fixed, orbit) = conjugate_to_fix_origin(&moved, z0)?;
    for (s, t) in [(0.0, 0.5), (0.25, 1.0), (0.0, 1.0)] {
        let (w, dw) = fixed.at(&s, &t)?.eval_with_derivative(origin)?;
        println!(
            "({s}, {t}): c(t) = {:.5}, ω̃(0) = {:.1e}, ω̃'(0) = {dw:.6}",
            orbit.at(&t)?,
            w.norm()
        );
        assert!(w.norm() < 1e-14);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("conjugation example");
}

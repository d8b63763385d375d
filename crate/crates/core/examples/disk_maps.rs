// Building disk maps from primitives and checking them against the
// Schwarz–Pick, growth, deviation and Landau estimates.

use evofam::diskmap::{
    center_bound, fixed_origin_growth, hyperbolic_sum_iterates, identity_deviation, landau_radius, lipschitz_bound,
    schwarz_pick_upper, BoundLedger, DiskMap,
};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let lambda = Complex64::new(0.3, -0.2);
    let map = DiskMap::mobius(lambda)?
        .after(&DiskMap::scale(Complex64::new(0.0, 0.8))?)
        .after(&DiskMap::monomial(Complex64::new(1.0, 0.0), 2)?);
    println!("map = {map}");

    let w0 = map.eval(Complex64::new(0.0, 0.0))?;
    for z in [Complex64::new(0.5, 0.0), Complex64::new(-0.2, 0.7)] {
        let (w, dw) = map.eval_with_derivative(z)?;
        let upper = schwarz_pick_upper(z.norm(), w0.norm())?;
        let center = center_bound(z.norm(), w.norm())?;
        println!(
            "z = {z:.3}: |ω(z)| = {:.6} ≤ {upper:.6}, |ω(0)| = {:.6} ≤ {center:.6}, ω'(z) = {dw:.4}",
            w.norm(),
            w0.norm()
        );
        assert!(w.norm() <= upper && w0.norm() <= center);
    }

    // an origin-fixing map with ω'(0) = λ
    let fixed = DiskMap::scale(Complex64::new(0.6, 0.3))?;
    let slope = fixed.deriv(Complex64::new(0.0, 0.0))?;
    let (z, z2) = (Complex64::new(0.4, 0.1), Complex64::new(0.1, -0.3));
    let ledger = BoundLedger::for_origin_fixing(z, z2, slope)?;
    println!("ledger at {z:.2}: {ledger:?}");
    assert!(fixed.eval(z)?.norm() <= fixed_origin_growth(z.norm(), slope.norm())?);
    assert!((fixed.eval(z)? - z).norm() <= identity_deviation(z.norm(), slope)?);
    assert!((fixed.eval(z)? - fixed.eval(z2)?).norm() <= lipschitz_bound(z, z2, 0.5)?);

    for sigma in [0.1, 0.5, 0.9, 0.99] {
        println!("Landau radius ρ({sigma}) = {:.6}", landau_radius(sigma)?);
    }
    let iterates = hyperbolic_sum_iterates(0.1, 6)?;
    println!("hyperbolic sums of 0.1: {iterates:.6?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("disk map example");
}

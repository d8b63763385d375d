// Recovering a family from a Loewner chain `f_t` through `ω_{s,t} = f_t⁻¹ ∘ f_s`.

use evofam::diagnostics::{lu_distance, semigroup_residual, GridSpec};
use evofam::diskmap::{DiskMap, DiskRegion};
use evofam::evolution::{from_loewner_chain, invert_univalent, make_radial, NewtonSettings};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let f = DiskMap::mobius(Complex64::new(0.3, 0.2))?;
    let target = Complex64::new(0.1, -0.4);
    let inv = invert_univalent(&f, target, target, &NewtonSettings::default())?;
    println!(
        "σ⁻¹({target}) = {:.12} after {} iterations (residual {:.1e})",
        inv.point, inv.iterations, inv.residual
    );

    let chain = from_loewner_chain(0.0, 1.0, |t: &f64| DiskMap::scale_real((t - 1.0).exp()), 1e-12)?;
    let exact = make_radial(0.0, 1.0)?;
    let r = DiskRegion::new(0.9)?;
    let mut worst: f64 = 0.0;
    for (s, t) in [(0.0, 1.0), (0.1, 0.4), (0.5, 0.9)] {
        worst = worst.max(lu_distance(&chain.at(&s, &t)?, &exact.at(&s, &t)?, r, 64)?);
    }
    println!("distance to the closed form on |z| = 0.9: {worst:.2e}");
    let ef3 = semigroup_residual(&chain, &GridSpec::default())?;
    println!("EF3 residual of the inverted chain: {ef3:.2e}");
    assert!(worst < 1e-10 && ef3 < 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("loewner example");
}

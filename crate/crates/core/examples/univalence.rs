// A Landau-radius certificate for `ω_{0,1}` of the radial family, and the
// sample test catching a non-injective map.

use evofam::diagnostics::{univalence_certificate, univalence_sample_test, CertificateOptions};
use evofam::diskmap::{DiskMap, DiskRegion};
use evofam::evolution::make_radial;
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let family = make_radial(0.0, 1.0)?;
    let r = DiskRegion::new(0.5)?;
    let cert = univalence_certificate(
        &family,
        0.0,
        1.0,
        r,
        Complex64::new(0.0, 0.0),
        CertificateOptions::default(),
    )?;
    println!(
        "σ = {:.6}, ρ(σ) = {:.6} > {:.6}, {} steps: {:.4?}",
        cert.sigma,
        cert.landau_radius,
        cert.conjugated_radius,
        cert.steps(),
        cert.subdivision
    );
    assert!(cert.is_consistent());

    let map = family.at(&0.0, &1.0)?;
    let test = univalence_sample_test(&map, r, 512, 7)?;
    println!("radial ω_(0,1): {} pairs, passed = {}", test.pairs_checked, test.passed);

    let even = DiskMap::monomial(Complex64::new(0.9, 0.0), 2)?;
    let test = univalence_sample_test(&even, r, 512, 7)?;
    if let Some((z1, z2)) = test.witness {
        println!("0.9 z²: f({z1:.4}) = f({z2:.4})");
    }
    assert!(!test.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("univalence example");
}

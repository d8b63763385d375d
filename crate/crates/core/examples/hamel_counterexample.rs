// A discontinuous evolution family built from an additive function on the
// lattice `ℚ + ℚ√2`, with `f(1) = π` and `f(√2) = 0`.

use evofam::diagnostics::{right_parameter_modulus, GridSpec, TimeGrid};
use evofam::diskmap::DiskRegion;
use evofam::hamel::{discontinuity_witness, exact_axiom_check, HamelConfig, LatticeGrid};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let cfg = HamelConfig::from_toml(
        r#"basis = ["1", "sqrt2"]
images = ["pi", 0.0]
start = ["0", "0"]
end = ["2", "0"]
"#,
    )?;
    let family = cfg.family()?;
    let grid = LatticeGrid::new(&cfg.spec, GridSpec::default())?;

    let times = grid.times(family.start(), family.end())?;
    let exact = exact_axiom_check(&cfg.spec, &family, &times)?;
    println!(
        "exact axioms over {} times / {} triples: {}",
        exact.times,
        exact.triples,
        exact.passed()
    );

    let witness = discontinuity_witness(&cfg.spec, &family, DiskRegion::new(0.5)?)?;
    println!("t* = {} ≈ {:.12}", witness.right_limit, witness.right_limit.real());
    for p in witness.right.iter().take(6) {
        println!(
            "  n = {:2}  t_n = {:<14} distance {:.6}",
            p.n,
            p.time.to_string(),
            p.distance
        );
    }
    println!("gap over n ≥ 3: {:.6} (limit {:.6})", witness.gap, witness.limit_gap);

    let right = right_parameter_modulus(&family, Complex64::new(0.0, 0.0), &grid)?;
    println!(
        "right modulus at r = 0.5 stays at {:.4?}",
        right.at_radius(0.5).unwrap_or(&[])
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hamel example");
}

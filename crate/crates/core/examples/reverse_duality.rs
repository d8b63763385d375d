// Time reversal: `f_{s,t} = ω_{−t,−s}` is a reverse evolution family.

use evofam::diagnostics::{dual_round_trip, reverse_residuals, GridSpec};
use evofam::evolution::{make_rotation, reverse_dual};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let family = make_rotation(0.0, 1.0, |t| t.sin())?;
    let dual = reverse_dual(&family);
    println!("dual lives on [{}, {}]", dual.start(), dual.end());

    let z = Complex64::new(0.3, 0.3);
    let (s, u, t) = (-0.9, -0.6, -0.2);
    let lhs = dual.at(&s, &u)?.after(&dual.at(&u, &t)?).eval(z)?;
    let rhs = dual.at(&s, &t)?.eval(z)?;
    println!("f_(s,u)∘f_(u,t) = {lhs:.6}, f_(s,t) = {rhs:.6}");

    let grid = GridSpec::default();
    let (tm1, tm2) = reverse_residuals(&dual, &grid)?;
    let round_trip = dual_round_trip(&family, &grid)?;
    println!("reverse residuals {tm1:.1e}, {tm2:.1e}; round trip {round_trip:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("duality example");
}

// Randomized audit of the disk bounds, and the same audit on maps scaled by
// 1.01 so that they escape the disk.

use evofam::diagnostics::{bound_audit, AuditConfig};

pub fn run_example() -> evofam::Result<()> {
    let config = AuditConfig {
        trials: 200,
        seed: 42,
        ..AuditConfig::default()
    };
    let report = bound_audit(&config)?;
    println!("{} trials: {:?}", config.trials, report.checked);
    println!("violations: {}", report.total_violations());

    let widened = bound_audit(&AuditConfig { widen: true, ..config })?;
    if let Some(v) = widened.violations.first() {
        println!(
            "widened: {} at {:.4} on {}: {:.6} > {:.6}",
            v.check, v.point, v.map, v.observed, v.bound
        );
    }
    assert!(report.passed() && !widened.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("audit example");
}

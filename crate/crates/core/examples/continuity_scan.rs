// Continuity moduli of a continuous and a discontinuous family, written as a
// JSON report and CSV tables.

use evofam::cli::build_real;
use evofam::diagnostics::{scan_moduli, DiagnosticsReport, GridSpec, Verdict, JOINT_CONTINUITY_NOTE};
use num_complex::Complex64;

pub fn run_example() -> evofam::Result<()> {
    let grid = GridSpec::default().with_levels(6);
    let out = std::env::temp_dir().join("evofam-continuity-scan");
    for name in ["rotation:t^2", "rotation:step"] {
        let family = build_real(name, 0.0, 1.0)?;
        let moduli = scan_moduli(&family, Complex64::new(0.3, 0.0), &grid)?;
        let mut report = DiagnosticsReport::new(&family, &grid, 0);
        for m in moduli.all() {
            let v = Verdict::decay(m, &grid);
            println!("{name:>14} {:>8}: worst ratio {:.3} -> {}", m.kind, v.statistic, v.note);
            report.verdicts.insert(m.kind.clone(), v);
        }
        if let Some(values) = moduli.right.at_radius(0.5) {
            println!("{name:>14} right modulus at r = 0.5: {values:.3?}");
        }
        report.notes.push(JOINT_CONTINUITY_NOTE.into());
        report.moduli = Some(moduli);
        let dir = out.join(name.replace([':', '^'], "_"));
        let tables = report.write_csv_tables(&dir)?;
        report.write_json(&dir.join("report.json"))?;
        println!("{name:>14} wrote {} tables to {}", tables.len(), dir.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scan example");
}

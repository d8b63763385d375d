use std::path::Path;

use num_complex::Complex64;
use serde_json::json;

use super::config::RunConfig;
use super::registry::{build, Registered};
use crate::diagnostics::{
    bound_audit, diagonal_residual, hyperbolic_bound_sup, non_constancy, scan_moduli, semigroup_residual,
    univalence_certificate, AuditConfig, AuditReport, CertificateOptions, DiagnosticsReport, GridSpec, Residuals,
    TimeGrid, Verdict, JOINT_CONTINUITY_NOTE,
};
use crate::diskmap::DiskRegion;
use crate::error::{Error, Result};
use crate::evolution::{EvolutionFamily, Time};
use crate::hamel::{discontinuity_witness, exact_axiom_check, HamelConfig, LatticeGrid, TimeVector};

/// Outcome of a command: the report (if any) and whether every verdict passed.
#[derive(Debug, Clone)]
pub struct Outcome<R> {
    pub report: R,
    pub passed: bool,
}

fn axiom_report<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    grid: &G,
    config: &RunConfig,
    ef3_tolerance: f64,
) -> Result<DiagnosticsReport> {
    let spec = grid.spec();
    let mut report = DiagnosticsReport::new(family, spec, config.seed);
    let tol = &config.tolerances;
    let residuals = Residuals {
        ef1: non_constancy(family, grid)?,
        ef2: diagonal_residual(family, grid)?,
        ef3: semigroup_residual(family, grid)?,
    };
    report.hyperbolic_sup = Some(hyperbolic_bound_sup(family, grid, tol.hyperbolic_margin)?);
    let ef1 = Verdict::above(
        residuals.ef1.min_witness,
        residuals.ef1.threshold,
        spec,
        "non-constancy witness",
    );
    report.verdicts.insert("ef1".into(), ef1);
    report.verdicts.insert(
        "ef2".into(),
        Verdict::below(residuals.ef2, tol.ef2, spec, "max d(ω_{t,t}, id)"),
    );
    report.verdicts.insert(
        "ef3".into(),
        Verdict::below(residuals.ef3, ef3_tolerance, spec, "max |ω_{u,t}∘ω_{s,u} − ω_{s,t}|"),
    );
    report.residuals = Some(residuals);
    Ok(report)
}

fn hamel_setup(cfg: &HamelConfig, grid: GridSpec) -> Result<(EvolutionFamily<TimeVector>, LatticeGrid)> {
    Ok((cfg.family()?, LatticeGrid::new(&cfg.spec, grid)?))
}

fn exact_axioms_json(
    cfg: &HamelConfig,
    family: &EvolutionFamily<TimeVector>,
    grid: &LatticeGrid,
) -> Result<(serde_json::Value, bool)> {
    let times = grid.times(family.start(), family.end())?;
    let exact = exact_axiom_check(&cfg.spec, family, &times)?;
    let passed = exact.passed();
    Ok((
        serde_json::to_value(&exact).map_err(|e| Error::Config(e.to_string()))?,
        passed,
    ))
}

fn spec_json(cfg: &HamelConfig) -> serde_json::Value {
    json!({
        "basis": cfg.spec.basis().labels(),
        "images": cfg.spec.image_labels(),
        "image_values": cfg.spec.image_values(),
    })
}

/// EF1–EF3 residuals and the hyperbolic bound. For Hamel families the axioms
/// are also checked in exact arithmetic.
pub fn cmd_verify(config: &RunConfig) -> Result<Outcome<DiagnosticsReport>> {
    config.validate()?;
    let grid = config.grid.resolve()?;
    let [a, b] = config.interval;
    let report = match build(&config.family, a, b)? {
        Registered::Real { family, numerical } => {
            let tol = if numerical {
                config.tolerances.ef3_numerical
            } else {
                config.tolerances.ef3
            };
            axiom_report(&family, &grid, config, tol)?
        }
        Registered::Hamel(cfg) => {
            let (family, lattice) = hamel_setup(&cfg, grid)?;
            let mut report = axiom_report(&family, &lattice, config, config.tolerances.ef3)?;
            let (exact, passed) = exact_axioms_json(&cfg, &family, &lattice)?;
            if !passed {
                report.notes.push("exact axiom check failed".into());
            }
            report.counterexample = Some(json!({ "spec": spec_json(&cfg), "exact_axioms": exact }));
            report
        }
    };
    let passed = ["ef1", "ef2", "ef3"]
        .iter()
        .all(|k| report.verdict(k).is_some_and(|v| v.passed));
    Ok(Outcome { report, passed })
}

fn scan_report<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    grid: &G,
    config: &RunConfig,
) -> Result<DiagnosticsReport> {
    let spec = grid.spec();
    let mut report = DiagnosticsReport::new(family, spec, config.seed);
    let [re, im] = config.base_point;
    let moduli = scan_moduli(family, Complex64::new(re, im), grid)?;
    for m in moduli.all() {
        report.verdicts.insert(m.kind.clone(), Verdict::decay(m, spec));
    }
    let continuous = moduli.consistent_with_continuity();
    let worst = report.verdicts.values().map(|v| v.statistic).fold(0.0, f64::max);
    let note = if continuous {
        "consistent with joint continuity"
    } else {
        "not consistent with joint continuity"
    };
    report.verdicts.insert(
        "continuity".into(),
        Verdict {
            passed: continuous,
            statistic: worst,
            note: note.into(),
            ..Verdict::decay(&moduli.joint, spec)
        },
    );
    report.notes.push(JOINT_CONTINUITY_NOTE.into());
    report.moduli = Some(moduli);
    Ok(report)
}

/// Continuity moduli in both parameters, jointly and on the diagonal, with a
/// heuristic continuity verdict. Real-time families also get a univalence
/// certificate for `ω_{a,b}` on the configured radius.
pub fn cmd_scan(config: &RunConfig) -> Result<Outcome<DiagnosticsReport>> {
    config.validate()?;
    let grid = config.grid.resolve()?;
    let [a, b] = config.interval;
    let report = match build(&config.family, a, b)? {
        Registered::Real { family, .. } => {
            let mut report = scan_report(&family, &grid, config)?;
            let [re, im] = config.base_point;
            let r = DiskRegion::new(config.radius)?;
            match univalence_certificate(&family, a, b, r, Complex64::new(re, im), CertificateOptions::default()) {
                Ok(cert) => report.certificates.push(cert),
                Err(e) => report.notes.push(format!("no univalence certificate: {e}")),
            }
            report
        }
        Registered::Hamel(cfg) => {
            let (family, lattice) = hamel_setup(&cfg, grid)?;
            let mut report = scan_report(&family, &lattice, config)?;
            report.counterexample = Some(json!({ "spec": spec_json(&cfg) }));
            report
        }
    };
    if let Some(dir) = &config.csv_dir {
        report.write_csv_tables(dir)?;
    }
    let passed = report.verdict("continuity").is_some_and(|v| v.passed);
    Ok(Outcome { report, passed })
}

/// Randomized audit of the disk bounds.
pub fn cmd_bounds(config: &RunConfig) -> Result<Outcome<AuditReport>> {
    let audit = AuditConfig {
        trials: config.trials,
        seed: config.seed,
        widen: config.widen,
        ..AuditConfig::default()
    };
    let report = bound_audit(&audit)?;
    let passed = report.passed();
    Ok(Outcome { report, passed })
}

/// Builds the Hamel family, checks EF1–EF3 exactly and attaches a
/// discontinuity witness. Fails with [`Error::NotDiscontinuous`] for linear
/// specs.
pub fn cmd_counterexample(config: &RunConfig) -> Result<Outcome<DiagnosticsReport>> {
    let cfg = match &config.spec {
        Some(path) => HamelConfig::from_path(path)?,
        None => match config.family.strip_prefix("hamel:") {
            Some(path) => HamelConfig::from_path(Path::new(path))?,
            None => HamelConfig::default_spec(),
        },
    };
    let grid = config.grid.resolve()?;
    let (family, lattice) = hamel_setup(&cfg, grid)?;
    let mut report = DiagnosticsReport::new(&family, lattice.spec(), config.seed);
    let (exact, exact_passed) = exact_axioms_json(&cfg, &family, &lattice)?;
    let witness = discontinuity_witness(&cfg.spec, &family, DiskRegion::new(cfg.radius)?)?;
    let spec = lattice.spec();
    report.verdicts.insert(
        "discontinuity".into(),
        Verdict::above(witness.gap, 0.0, spec, "smallest witness distance over n ≥ 3"),
    );
    report.notes.push(format!(
        "witness gap {:.6} at r = {} (limit {:.6})",
        witness.gap, witness.radius, witness.limit_gap
    ));
    report.counterexample = Some(json!({
        "spec": spec_json(&cfg),
        "exact_axioms": exact,
        "witness": serde_json::to_value(&witness).map_err(|e| Error::Config(e.to_string()))?,
    }));
    let passed = exact_passed && report.all_passed();
    Ok(Outcome { report, passed })
}

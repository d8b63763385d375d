//! Serializable diagnostics reports and CSV modulus tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    diagonal_profile, joint_continuity_modulus, left_parameter_modulus, right_parameter_modulus, ContinuityModulus,
    GridSpec, HyperbolicBound, NonConstancy, TimeGrid, UnivalenceCertificate, DECAY_FACTOR,
};
use crate::error::{Error, Result};
use crate::evolution::{EvolutionFamily, Time};

/// Axiom residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub ef1: NonConstancy,
    /// `max d(ω_{t,t}, id)`.
    pub ef2: f64,
    /// `max |ω_{u,t} ∘ ω_{s,u} − ω_{s,t}|`.
    pub ef3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliSet {
    pub right: ContinuityModulus,
    pub left: ContinuityModulus,
    pub joint: ContinuityModulus,
    pub diagonal: ContinuityModulus,
}

impl ModuliSet {
    pub fn all(&self) -> [&ContinuityModulus; 4] {
        [&self.right, &self.left, &self.joint, &self.diagonal]
    }

    pub fn consistent_with_continuity(&self) -> bool {
        self.all().iter().all(|m| m.consistent_with_continuity())
    }
}

/// Computes the four continuity moduli of a family.
pub fn scan_moduli<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, z0: Complex64, grid: &G) -> Result<ModuliSet> {
    Ok(ModuliSet {
        right: right_parameter_modulus(family, z0, grid)?,
        left: left_parameter_modulus(family, grid)?,
        joint: joint_continuity_modulus(family, grid)?,
        diagonal: diagonal_profile(family, grid)?,
    })
}

/// A pass/fail judgement together with the statistic and threshold behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub statistic: f64,
    /// `"<"`, `"<="`, `">"` or `"decay"`.
    pub comparison: String,
    pub threshold: f64,
    pub grid: GridSpec,
    pub note: String,
}

impl Verdict {
    pub fn below(statistic: f64, threshold: f64, grid: &GridSpec, note: impl Into<String>) -> Self {
        Verdict {
            passed: statistic < threshold,
            statistic,
            comparison: "<".into(),
            threshold,
            grid: grid.clone(),
            note: note.into(),
        }
    }

    pub fn above(statistic: f64, threshold: f64, grid: &GridSpec, note: impl Into<String>) -> Self {
        Verdict {
            passed: statistic > threshold,
            statistic,
            comparison: ">".into(),
            threshold,
            grid: grid.clone(),
            note: note.into(),
        }
    }

    /// Heuristic continuity verdict for a modulus. The statistic is the worst
    /// ratio between consecutive entries that are above the floor.
    pub fn decay(modulus: &ContinuityModulus, grid: &GridSpec) -> Self {
        let passed = modulus.consistent_with_continuity();
        let mut worst: f64 = 0.0;
        for (_, seq) in modulus.sequences() {
            for w in seq.windows(2) {
                if w[1] > super::DECAY_FLOOR && w[0] > 0.0 {
                    worst = worst.max(w[1] / w[0]);
                }
            }
        }
        let note = if passed {
            "consistent with continuity"
        } else {
            "not consistent with continuity"
        };
        Verdict {
            passed,
            statistic: worst,
            comparison: "decay".into(),
            threshold: DECAY_FACTOR,
            grid: grid.clone(),
            note: note.into(),
        }
    }
}

/// Everything a `verify`, `scan` or `counterexample` run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub family: String,
    pub interval: [String; 2],
    pub seed: u64,
    pub grid: GridSpec,
    pub residuals: Option<Residuals>,
    pub hyperbolic_sup: Option<HyperbolicBound>,
    pub moduli: Option<ModuliSet>,
    pub certificates: Vec<UnivalenceCertificate>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub counterexample: Option<serde_json::Value>,
    pub notes: Vec<String>,
}

/// Note attached to every scan: separate continuity in each parameter is
/// measured, joint continuity is only ever supported or contradicted.
pub const JOINT_CONTINUITY_NOTE: &str =
    "whether separate continuity in s and t implies joint continuity is an open question; the joint verdict is a numerical heuristic only";

impl DiagnosticsReport {
    pub fn new<T: Time>(family: &EvolutionFamily<T>, grid: &GridSpec, seed: u64) -> Self {
        DiagnosticsReport {
            family: family.label().to_string(),
            interval: [family.start().to_string(), family.end().to_string()],
            seed,
            grid: grid.clone(),
            residuals: None,
            hyperbolic_sup: None,
            moduli: None,
            certificates: Vec::new(),
            verdicts: BTreeMap::new(),
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// `true` when every verdict passed.
    pub fn all_passed(&self) -> bool {
        self.verdicts.values().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.get(name)
    }

    /// Pretty JSON with shortest round-trip float formatting and sorted
    /// verdict keys, so identical runs give identical bytes.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(format!("serializing report: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("parsing report: {e}")))
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        write_file(path, &text)
    }

    /// Writes `<kind>.csv` for each modulus into `dir`; returns the paths.
    pub fn write_csv_tables(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let Some(moduli) = &self.moduli else {
            return Ok(Vec::new());
        };
        fs::create_dir_all(dir).map_err(|e| Error::Config(format!("creating {}: {e}", dir.display())))?;
        let mut written = Vec::new();
        for m in moduli.all() {
            let path = dir.join(format!("{}.csv", m.kind));
            write_file(&path, &modulus_csv(m))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Config(format!("creating {}: {e}", parent.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Config(format!("writing {}: {e}", path.display())))
}

/// CSV with columns `delta,radius,modulus`, 17 significant digits. Scalar
/// sequences are emitted with the radius column set to `value` or
/// `derivative`.
pub fn modulus_csv(modulus: &ContinuityModulus) -> String {
    let mut out = String::from("delta,radius,modulus\n");
    for (delta, r, m) in modulus.rows() {
        let _ = writeln!(out, "{delta:.16e},{r:.16e},{m:.16e}");
    }
    for (name, seq) in [("value", &modulus.value), ("derivative", &modulus.derivative)] {
        for (delta, m) in modulus.deltas.iter().zip(seq.iter()) {
            let _ = writeln!(out, "{delta:.16e},{name},{m:.16e}");
        }
    }
    out
}

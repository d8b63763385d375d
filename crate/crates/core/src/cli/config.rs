use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::GridSpec;
use crate::diskmap::DiskRegion;
use crate::error::{Error, Result};

/// Tolerances used by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub ef2: f64,
    pub ef3: f64,
    /// EF3 tolerance for families that invert a Loewner chain numerically.
    pub ef3_numerical: f64,
    pub hyperbolic_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ef2: 1e-12,
            ef3: 1e-10,
            ef3_numerical: 1e-8,
            hyperbolic_margin: 1e-6,
        }
    }
}

/// Grid overrides; unset fields keep the [`GridSpec`] defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridOverrides {
    pub n_time: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub n_angles: Option<usize>,
    pub levels: Option<usize>,
    pub n_centers: Option<usize>,
}

impl GridOverrides {
    /// Applies the overrides and validates the result.
    pub fn resolve(&self) -> Result<GridSpec> {
        let mut grid = GridSpec::default();
        if let Some(n) = self.n_time {
            grid.n_time = n;
        }
        if let Some(radii) = &self.radii {
            grid.radii = radii
                .iter()
                .map(|&r| DiskRegion::new(r))
                .collect::<Result<_>>()
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Some(n) = self.n_angles {
            grid.n_angles = n;
        }
        if let Some(n) = self.levels {
            grid.levels = n;
        }
        if let Some(n) = self.n_centers {
            grid.n_centers = n;
        }
        grid.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(grid)
    }
}

/// Everything a command needs. Loaded from an optional TOML file, then
/// overridden by command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Registry name (see `--help`) or `hamel:<path>`.
    pub family: String,
    pub interval: [f64; 2],
    pub grid: GridOverrides,
    pub tolerances: Tolerances,
    pub seed: u64,
    /// JSON report path.
    pub out: Option<PathBuf>,
    /// Directory for CSV modulus tables.
    pub csv_dir: Option<PathBuf>,
    /// Base point `z₀ = [re, im]` for right-parameter moduli and certificates.
    pub base_point: [f64; 2],
    /// Radius for certificates and witnesses.
    pub radius: f64,
    pub trials: usize,
    pub widen: bool,
    /// Hamel spec file for `counterexample`.
    pub spec: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: "radial".into(),
            interval: [0.0, 1.0],
            grid: GridOverrides::default(),
            tolerances: Tolerances::default(),
            seed: 0,
            out: None,
            csv_dir: None,
            base_point: [0.3, 0.0],
            radius: 0.5,
            trials: 1000,
            widen: false,
            spec: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
        RunConfig::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let [a, b] = self.interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Config(format!("interval {a},{b} must satisfy a < b")));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::Config(format!("radius {} must lie in (0, 1)", self.radius)));
        }
        let [re, im] = self.base_point;
        if re.hypot(im) >= 1.0 {
            return Err(Error::Config("base point must lie inside the unit disk".into()));
        }
        self.grid.resolve().map(|_| ())
    }
}

/// Parses `"a,b"`.
pub fn parse_pair(text: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got `{text}`"));
    }
    let parse = |s: &str| s.parse::<f64>().map_err(|_| format!("`{s}` is not a number"));
    Ok([parse(parts[0])?, parse(parts[1])?])
}

/// Parses `"r1,r2,..."`.
pub fn parse_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number")))
        .collect()
}

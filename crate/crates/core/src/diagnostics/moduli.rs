use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{nan_max, TimeGrid};
use crate::diskmap::sample::circle_points;
use crate::diskmap::DiskMap;
use crate::error::{domain, Result};
use crate::evolution::{EvolutionFamily, Time};

/// Largest modulus ratio per halving of the gap that still counts as decay.
pub const DECAY_FACTOR: f64 = 0.75;
/// Moduli below this are treated as zero by the decay test.
pub const DECAY_FLOOR: f64 = 1e-12;

/// Moduli of continuity sampled on a ladder of gap widths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityModulus {
    /// "right", "left", "joint" or "diagonal".
    pub kind: String,
    /// Gap widths, decreasing.
    pub deltas: Vec<f64>,
    pub radii: Vec<f64>,
    /// `moduli[i][k]`: max locally-uniform distance on `|z| = radii[i]` over
    /// parameter pairs within `deltas[k]`.
    pub moduli: Vec<Vec<f64>>,
    /// Scalar modulus of the value at the base point (diagonal: `|ω(0)|`).
    pub value: Vec<f64>,
    /// Scalar modulus of the derivative at the base point (diagonal: `|ω'(0) − 1|`).
    pub derivative: Vec<f64>,
    pub base_point: Complex64,
}

/// `true` when every step of `seq` shrinks by at least `factor` or lands below `floor`.
pub fn decays(seq: &[f64], factor: f64, floor: f64) -> bool {
    seq.windows(2)
        .all(|w| !w[1].is_nan() && (w[1] <= factor * w[0] || w[1] <= floor))
}

impl ContinuityModulus {
    pub fn at_radius(&self, r: f64) -> Option<&[f64]> {
        self.radii
            .iter()
            .position(|&x| (x - r).abs() < 1e-15)
            .map(|i| self.moduli[i].as_slice())
    }

    /// All sequences carried by this modulus, with a name for each.
    pub fn sequences(&self) -> Vec<(String, &[f64])> {
        let mut out: Vec<(String, &[f64])> = self
            .radii
            .iter()
            .zip(&self.moduli)
            .map(|(r, m)| (format!("r={r}"), m.as_slice()))
            .collect();
        if !self.value.is_empty() {
            out.push(("value".into(), &self.value));
        }
        if !self.derivative.is_empty() {
            out.push(("derivative".into(), &self.derivative));
        }
        out
    }

    /// Heuristic: every sequence decays by [`DECAY_FACTOR`] per halving.
    pub fn consistent_with_continuity(&self) -> bool {
        self.sequences()
            .iter()
            .all(|(_, s)| decays(s, DECAY_FACTOR, DECAY_FLOOR))
    }

    /// Scalar sequences only (the value and derivative at the base point).
    pub fn scalars_decay(&self) -> bool {
        decays(&self.value, DECAY_FACTOR, DECAY_FLOOR) && decays(&self.derivative, DECAY_FACTOR, DECAY_FLOOR)
    }

    /// Smallest modulus over the delta ladder on the given circle.
    pub fn floor_at(&self, r: f64) -> Option<f64> {
        self.at_radius(r)
            .map(|m| m.iter().copied().fold(f64::INFINITY, f64::min))
    }

    /// Rows `(delta, radius, modulus)` for CSV export.
    pub fn rows(&self) -> Vec<(f64, f64, f64)> {
        let mut rows = Vec::new();
        for (k, &delta) in self.deltas.iter().enumerate() {
            for (i, &r) in self.radii.iter().enumerate() {
                rows.push((delta, r, self.moduli[i][k]));
            }
        }
        rows
    }
}

struct Probe {
    circles: Vec<Vec<Complex64>>,
    point: Complex64,
}

impl Probe {
    fn new<T: Time, G: TimeGrid<T>>(grid: &G, point: Complex64) -> Self {
        let spec = grid.spec();
        Probe {
            circles: spec
                .radii
                .iter()
                .map(|r| circle_points(spec.n_angles, r.radius()))
                .collect(),
            point,
        }
    }

    /// Per-circle sup distance, then the value and derivative gaps at the probe point.
    fn compare(&self, f: &DiskMap, g: &DiskMap) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.circles.len() + 2);
        for circle in &self.circles {
            out.push(super::sup_distance(f, g, circle)?);
        }
        let (fv, fd) = f.eval_with_derivative(self.point)?;
        let (gv, gd) = g.eval_with_derivative(self.point)?;
        out.push((fv - gv).norm());
        out.push((fd - gd).norm());
        Ok(out)
    }
}

fn merge(a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    a.into_iter().zip(b).map(|(x, y)| nan_max(x, y)).collect()
}

fn assemble(
    kind: &str,
    deltas: Vec<f64>,
    radii: Vec<f64>,
    columns: Vec<Vec<f64>>,
    base_point: Complex64,
    keep_scalars: bool,
) -> ContinuityModulus {
    let n_r = radii.len();
    let width = n_r + 2;
    let col = |k: usize, i: usize| columns[k].get(i).copied().unwrap_or(0.0);
    let moduli = (0..n_r)
        .map(|i| (0..deltas.len()).map(|k| col(k, i)).collect())
        .collect();
    let (value, derivative) = if keep_scalars {
        (
            (0..deltas.len()).map(|k| col(k, width - 2)).collect(),
            (0..deltas.len()).map(|k| col(k, width - 1)).collect(),
        )
    } else {
        (vec![], vec![])
    };
    ContinuityModulus {
        kind: kind.into(),
        deltas,
        radii,
        moduli,
        value,
        derivative,
        base_point,
    }
}

fn one_parameter_modulus<T, G, M>(
    kind: &str,
    family: &EvolutionFamily<T>,
    grid: &G,
    point: Complex64,
    map_at: M,
) -> Result<ContinuityModulus>
where
    T: Time,
    G: TimeGrid<T>,
    M: Fn(&T) -> Result<DiskMap> + Sync,
{
    let (a, b) = (family.start(), family.end());
    let probe = Probe::new(grid, point);
    let deltas = grid.deltas(a, b);
    let mut columns = Vec::with_capacity(deltas.len());
    for &delta in &deltas {
        let pairs = grid.pairs_within(a, b, delta)?;
        let col = pairs
            .par_iter()
            .map(|(x, y)| probe.compare(&map_at(x)?, &map_at(y)?))
            .try_reduce(Vec::new, |p, q| Ok(merge(p, q)))?;
        columns.push(col);
    }
    let radii = grid.spec().radii.iter().map(|r| r.radius()).collect();
    Ok(assemble(kind, deltas, radii, columns, point, true))
}

/// Moduli of `t ↦ ω_{a,t}` in locally uniform distance, plus scalar moduli of
/// `t ↦ ω_{a,t}(z₀)` and `t ↦ ω'_{a,t}(z₀)`.
pub fn right_parameter_modulus<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    z0: Complex64,
    grid: &G,
) -> Result<ContinuityModulus> {
    if z0.norm() >= 1.0 {
        return Err(domain(format!("base point {z0} must lie inside the disk")));
    }
    let a = family.start().clone();
    one_parameter_modulus("right", family, grid, z0, |t| family.at(&a, t))
}

/// Moduli of `s ↦ ω_{s,b}`, with scalar moduli of `ω_{s,b}(0)` and `ω'_{s,b}(0)`.
pub fn left_parameter_modulus<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    grid: &G,
) -> Result<ContinuityModulus> {
    let b = family.end().clone();
    one_parameter_modulus("left", family, grid, Complex64::new(0.0, 0.0), |s| family.at(s, &b))
}

/// Moduli of `(s, t) ↦ ω_{s,t}` over neighbouring admissible pairs.
pub fn joint_continuity_modulus<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    grid: &G,
) -> Result<ContinuityModulus> {
    let (a, b) = (family.start(), family.end());
    let origin = Complex64::new(0.0, 0.0);
    let probe = Probe::new(grid, origin);
    let deltas = grid.deltas(a, b);
    let mut columns = Vec::with_capacity(deltas.len());
    for &delta in &deltas {
        let neighbours = grid.joint_neighbours(a, b, delta)?;
        let col = neighbours
            .par_iter()
            .map(|((s, t), (s2, t2))| probe.compare(&family.at(s, t)?, &family.at(s2, t2)?))
            .try_reduce(Vec::new, |p, q| Ok(merge(p, q)))?;
        columns.push(col);
    }
    let radii = grid.spec().radii.iter().map(|r| r.radius()).collect();
    Ok(assemble("joint", deltas, radii, columns, origin, false))
}

fn diagonal_at_gap<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    c: &T,
    grid: &G,
    gap: f64,
) -> Result<(f64, f64)> {
    let (a, b) = (family.start(), family.end());
    if !family.contains(c) {
        return Err(domain(format!("center {c} must lie in [{a}, {b}]")));
    }
    let origin = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut worst = (0.0f64, 0.0f64);
    for (s, t) in grid.straddling_pairs(a, b, c, gap)? {
        let (v, d) = family.at(&s, &t)?.eval_with_derivative(origin)?;
        worst = (nan_max(worst.0, v.norm()), nan_max(worst.1, (d - one).norm()));
    }
    Ok(worst)
}

/// `(max |ω_{s,t}(0)|, max |ω'_{s,t}(0) − 1|)` over sampled `s ≤ c ≤ t` with
/// `t − s` at most the grid's finest gap.
pub fn diagonal_limits<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, c: &T, grid: &G) -> Result<(f64, f64)> {
    let gap = grid.finest_gap(family.start(), family.end());
    diagonal_at_gap(family, c, grid, gap)
}

/// Diagonal limits maximized over the grid's centers, for each gap of the
/// delta ladder. Reported as a modulus with no circle rows.
pub fn diagonal_profile<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, grid: &G) -> Result<ContinuityModulus> {
    let (a, b) = (family.start(), family.end());
    let centers = grid.diagonal_centers(a, b)?;
    let deltas = grid.deltas(a, b);
    let mut value = Vec::with_capacity(deltas.len());
    let mut derivative = Vec::with_capacity(deltas.len());
    for &gap in &deltas {
        let (v, d) = centers
            .par_iter()
            .map(|c| diagonal_at_gap(family, c, grid, gap))
            .try_reduce(|| (0.0, 0.0), |x, y| Ok((nan_max(x.0, y.0), nan_max(x.1, y.1))))?;
        value.push(v);
        derivative.push(d);
    }
    Ok(ContinuityModulus {
        kind: "diagonal".into(),
        deltas,
        radii: vec![],
        moduli: vec![],
        value,
        derivative,
        base_point: Complex64::new(0.0, 0.0),
    })
}

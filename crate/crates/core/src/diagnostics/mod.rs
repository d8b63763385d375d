//! Numerical checks of the evolution-family axioms, hyperbolic boundedness,
//! continuity moduli and univalence.
//!
//! Locally uniform convergence is discretized on a fixed ladder of circles: by
//! the maximum principle the sup of `|f − g|` over `|z| ≤ r` is attained on
//! `|z| = r`, so sampling circles is enough up to angular resolution.
//!
//! None of these functions can prove continuity. Moduli are reported as
//! sequences and a heuristic decay test says whether they are consistent with
//! continuity.

pub mod audit;
mod moduli;
pub mod report;
mod univalence;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diskmap::sample::circle_points;
use crate::diskmap::{DiskMap, DiskRegion};
use crate::error::{domain, Result};
use crate::evolution::{linspace, reverse_dual, EvolutionFamily, ReverseFamily, Time};

pub use audit::{bound_audit, AuditCheck, AuditConfig, AuditReport, Violation};
pub use moduli::{
    diagonal_limits, diagonal_profile, joint_continuity_modulus, left_parameter_modulus, right_parameter_modulus,
    ContinuityModulus, DECAY_FACTOR, DECAY_FLOOR,
};
pub use report::{modulus_csv, scan_moduli, DiagnosticsReport, ModuliSet, Residuals, Verdict, JOINT_CONTINUITY_NOTE};
pub use univalence::{
    univalence_certificate, univalence_sample_test, CertificateOptions, SampleTest, UnivalenceCertificate,
};

/// Discretization of `I₊² × 𝔻` used by every scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Time samples per axis.
    pub n_time: usize,
    /// Circle radii, strictly increasing in (0, 1).
    pub radii: Vec<DiskRegion>,
    /// Samples per circle.
    pub n_angles: usize,
    /// Number of gap widths; the k-th is `(b − a)·2^{−2−k}`.
    pub levels: usize,
    /// Points `c` at which diagonal limits are probed.
    pub n_centers: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_time: 9,
            radii: [0.25, 0.5, 0.75, 0.9]
                .into_iter()
                .map(|r| DiskRegion::new(r).expect("valid radius"))
                .collect(),
            n_angles: 64,
            levels: 9,
            n_centers: 11,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_time < 2 {
            return Err(domain(format!("n_time = {} must be at least 2", self.n_time)));
        }
        if self.n_angles < 8 {
            return Err(domain(format!("n_angles = {} must be at least 8", self.n_angles)));
        }
        if self.radii.is_empty() {
            return Err(domain("at least one radius is required"));
        }
        if self.radii.iter().any(|r| r.radius() >= 1.0) {
            return Err(domain("radii must be strictly below 1"));
        }
        if self.radii.windows(2).any(|w| w[0].radius() >= w[1].radius()) {
            return Err(domain("radii must be strictly increasing"));
        }
        if self.levels < 2 {
            return Err(domain("at least two gap levels are required"));
        }
        if self.n_centers < 1 {
            return Err(domain("at least one diagonal center is required"));
        }
        Ok(())
    }

    pub fn with_n_time(mut self, n: usize) -> Self {
        self.n_time = n;
        self
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    /// Sample points on every circle of the radius ladder.
    pub fn disk_samples(&self) -> Vec<Complex64> {
        self.radii
            .iter()
            .flat_map(|r| circle_points(self.n_angles, r.radius()))
            .collect()
    }
}

/// Gap widths `(b − a)·2^{−2−k}`, `k = 0..levels`.
pub fn delta_ladder(length: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| length * 0.25 * 0.5f64.powi(k as i32)).collect()
}

/// A choice of sample times and parameter pairs for a family's time domain.
///
/// [`GridSpec`] provides uniform grids for `f64` families; lattice families
/// supply their own implementation so that samples stay on the lattice.
/// A pair `(s, t)` and a neighbouring pair `(s', t')`.
pub type JointStep<T> = ((T, T), (T, T));

pub trait TimeGrid<T: Time>: Sync {
    fn spec(&self) -> &GridSpec;

    /// Sorted sample times in `[a, b]`, endpoints included.
    fn times(&self, a: &T, b: &T) -> Result<Vec<T>>;

    /// Gap widths, decreasing.
    fn deltas(&self, a: &T, b: &T) -> Vec<f64>;

    /// Pairs `x ≤ y` of times in `[a, b]` with `y − x ≤ delta`.
    fn pairs_within(&self, a: &T, b: &T, delta: f64) -> Result<Vec<(T, T)>>;

    /// Pairs of admissible points `(s, t)`, `(s', t')` with
    /// `max(|s − s'|, |t − t'|) ≤ delta`.
    fn joint_neighbours(&self, a: &T, b: &T, delta: f64) -> Result<Vec<JointStep<T>>>;

    /// Points `c` at which two-sided diagonal limits are probed.
    fn diagonal_centers(&self, a: &T, b: &T) -> Result<Vec<T>>;

    /// Pairs `s ≤ c ≤ t` inside `[a, b]` with `t − s ≤ gap`.
    fn straddling_pairs(&self, a: &T, b: &T, c: &T, gap: f64) -> Result<Vec<(T, T)>>;

    /// Spacing of the time grid.
    fn finest_gap(&self, a: &T, b: &T) -> f64;
}

impl TimeGrid<f64> for GridSpec {
    fn spec(&self) -> &GridSpec {
        self
    }

    fn times(&self, a: &f64, b: &f64) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(linspace(*a, *b, self.n_time))
    }

    fn deltas(&self, a: &f64, b: &f64) -> Vec<f64> {
        delta_ladder(b - a, self.levels)
    }

    fn pairs_within(&self, a: &f64, b: &f64, delta: f64) -> Result<Vec<(f64, f64)>> {
        let mut pairs = Vec::new();
        for t in self.times(a, b)? {
            let up = t + delta;
            if up <= *b {
                pairs.push((t, up));
            }
            let down = t - delta;
            if down >= *a {
                pairs.push((down, t));
            }
        }
        Ok(pairs)
    }

    fn joint_neighbours(&self, a: &f64, b: &f64, delta: f64) -> Result<Vec<JointStep<f64>>> {
        let times = self.times(a, b)?;
        let steps = [-delta, 0.0, delta];
        let mut out = Vec::new();
        for (i, &s) in times.iter().enumerate() {
            for &t in &times[i..] {
                for ds in steps {
                    for dt in steps {
                        if ds == 0.0 && dt == 0.0 {
                            continue;
                        }
                        let (s2, t2) = (s + ds, t + dt);
                        if *a <= s2 && s2 <= t2 && t2 <= *b {
                            out.push(((s, t), (s2, t2)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn diagonal_centers(&self, a: &f64, b: &f64) -> Result<Vec<f64>> {
        Ok(linspace(*a, *b, self.n_centers.max(1)))
    }

    fn straddling_pairs(&self, a: &f64, b: &f64, c: &f64, gap: f64) -> Result<Vec<(f64, f64)>> {
        if !(*a <= *c && *c <= *b) {
            return Err(domain(format!("center {c} must lie in [{a}, {b}]")));
        }
        let mut out = vec![(*c, *c)];
        for theta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let s = (c - theta * gap).max(*a);
            let t = (c + (1.0 - theta) * gap).min(*b);
            if s < t {
                out.push((s, t));
            }
        }
        Ok(out)
    }

    fn finest_gap(&self, a: &f64, b: &f64) -> f64 {
        (b - a) / (self.n_time.max(2) - 1) as f64
    }
}

/// Max that propagates NaN instead of swallowing it.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

pub(crate) fn par_max<I, F>(items: &[I], f: F) -> Result<f64>
where
    I: Sync,
    F: Fn(&I) -> Result<f64> + Sync + Send,
{
    items.par_iter().map(f).try_reduce(|| 0.0, |x, y| Ok(nan_max(x, y)))
}

/// `max_{|z| = r} |f(z) − g(z)|` over `n_angles` equispaced points.
pub fn lu_distance(f: &DiskMap, g: &DiskMap, r: DiskRegion, n_angles: usize) -> Result<f64> {
    if r.radius() >= 1.0 {
        return Err(domain("distance radius must be below 1"));
    }
    sup_distance(f, g, &circle_points(n_angles, r.radius()))
}

pub(crate) fn sup_distance(f: &DiskMap, g: &DiskMap, points: &[Complex64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &z in points {
        worst = nan_max(worst, (f.eval(z)? - g.eval(z)?).norm());
    }
    Ok(worst)
}

/// `max_t d(ω_{t,t}, id)` over the grid and every circle of the ladder.
pub fn diagonal_residual<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, grid: &G) -> Result<f64> {
    let samples = grid.spec().disk_samples();
    let id = DiskMap::identity();
    let times = grid.times(family.start(), family.end())?;
    par_max(&times, |t| sup_distance(&family.at(t, t)?, &id, &samples))
}

/// `max |ω_{u,t}(ω_{s,u}(z)) − ω_{s,t}(z)|` over grid triples `s ≤ u ≤ t` and
/// the disk samples.
pub fn semigroup_residual<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, grid: &G) -> Result<f64> {
    let samples = grid.spec().disk_samples();
    let times = grid.times(family.start(), family.end())?;
    let mut triples = Vec::new();
    for i in 0..times.len() {
        for j in i..times.len() {
            for k in j..times.len() {
                triples.push((i, j, k));
            }
        }
    }
    par_max(&triples, |&(i, j, k)| {
        let (s, u, t) = (&times[i], &times[j], &times[k]);
        let composed = family.at(u, t)?.after(&family.at(s, u)?);
        sup_distance(&composed, &family.at(s, t)?, &samples)
    })
}

/// Axiom residuals of a reverse family: `max d(f_{t,t}, id)` and
/// `max |f_{s,u}(f_{u,t}(z)) − f_{s,t}(z)|` over grid triples.
pub fn reverse_residuals<T: Time, G: TimeGrid<T>>(family: &ReverseFamily<T>, grid: &G) -> Result<(f64, f64)> {
    let samples = grid.spec().disk_samples();
    let id = DiskMap::identity();
    let times = grid.times(family.start(), family.end())?;
    let diagonal = par_max(&times, |t| sup_distance(&family.at(t, t)?, &id, &samples))?;
    let mut triples = Vec::new();
    for i in 0..times.len() {
        for j in i..times.len() {
            for k in j..times.len() {
                triples.push((i, j, k));
            }
        }
    }
    let semigroup = par_max(&triples, |&(i, j, k)| {
        let (s, u, t) = (&times[i], &times[j], &times[k]);
        let composed = family.at(s, u)?.after(&family.at(u, t)?);
        sup_distance(&composed, &family.at(s, t)?, &samples)
    })?;
    Ok((diagonal, semigroup))
}

/// `max d(ω_{s,t}, ω^{**}_{s,t})` over grid pairs, where `ω^{**}` is the dual of
/// the reverse dual.
pub fn dual_round_trip<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, grid: &G) -> Result<f64> {
    let back = reverse_dual(family).dual();
    let samples = grid.spec().disk_samples();
    let times = grid.times(family.start(), family.end())?;
    par_max(&admissible_pairs(&times), |(s, t)| {
        sup_distance(&family.at(s, t)?, &back.at(s, t)?, &samples)
    })
}

/// Non-constancy threshold used by the EF1 audit.
pub const EF1_THRESHOLD: f64 = 1e-14;

/// Result of the EF1 (non-constancy) audit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonConstancy {
    /// Smallest witness of non-constancy over the grid: the larger of
    /// `|ω'_{s,t}(0)|` and the spread of `ω_{s,t}` over eight sample points.
    pub min_witness: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// EF1 audit: every grid transition must have `|ω'(0)| > 10⁻¹⁴` or vary by more
/// than that across eight points of `|z| = 0.5`.
pub fn non_constancy<T: Time, G: TimeGrid<T>>(family: &EvolutionFamily<T>, grid: &G) -> Result<NonConstancy> {
    let times = grid.times(family.start(), family.end())?;
    let probes = circle_points(8, 0.5);
    let origin = Complex64::new(0.0, 0.0);
    let pairs = admissible_pairs(&times);
    let min_witness = pairs
        .par_iter()
        .map(|(s, t)| -> Result<f64> {
            let map = family.at(s, t)?;
            let d0 = map.deriv(origin)?.norm();
            let w0 = map.eval(probes[0])?;
            let mut spread: f64 = 0.0;
            for &z in &probes[1..] {
                spread = spread.max((map.eval(z)? - w0).norm());
            }
            Ok(d0.max(spread))
        })
        .try_reduce(|| f64::INFINITY, |x, y| Ok(x.min(y)))?;
    Ok(NonConstancy {
        min_witness,
        threshold: EF1_THRESHOLD,
        passed: min_witness > EF1_THRESHOLD,
    })
}

/// Hyperbolic boundedness estimate `sup |ω_{s,t}(0)|` over grid pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicBound {
    pub sup: f64,
    pub margin: f64,
    /// `sup ≤ 1 − margin`.
    pub bounded: bool,
}

pub const DEFAULT_HYPERBOLIC_MARGIN: f64 = 1e-6;

pub fn hyperbolic_bound_sup<T: Time, G: TimeGrid<T>>(
    family: &EvolutionFamily<T>,
    grid: &G,
    margin: f64,
) -> Result<HyperbolicBound> {
    let times = grid.times(family.start(), family.end())?;
    let pairs = admissible_pairs(&times);
    let origin = Complex64::new(0.0, 0.0);
    let sup = par_max(&pairs, |(s, t)| Ok(family.eval(s, t, origin)?.norm()))?;
    Ok(HyperbolicBound {
        sup,
        margin,
        bounded: sup <= 1.0 - margin,
    })
}

pub(crate) fn admissible_pairs<T: Time>(times: &[T]) -> Vec<(T, T)> {
    let mut pairs = Vec::new();
    for (i, s) in times.iter().enumerate() {
        for t in &times[i..] {
            pairs.push((s.clone(), t.clone()));
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{from_loewner_chain, make_corrupted, make_radial, make_rotation};
    use std::f64::consts::PI;

    fn r(x: f64) -> DiskRegion {
        DiskRegion::new(x).unwrap()
    }

    #[test]
    fn lu_distance_examples() {
        let id = DiskMap::identity();
        assert_eq!(lu_distance(&id, &id, r(0.5), 64).unwrap(), 0.0);
        let d = lu_distance(&id, &DiskMap::rotation(PI), r(0.5), 64).unwrap();
        assert!((d - 1.0).abs() < 1e-15);
        let d = lu_distance(
            &DiskMap::scale_real(0.9).unwrap(),
            &DiskMap::scale_real(0.8).unwrap(),
            r(0.5),
            64,
        )
        .unwrap();
        assert!((d - 0.05).abs() < 1e-15);
        assert!(lu_distance(&id, &id, r(1.0), 8).is_err());
    }

    #[test]
    fn reverse_dual_axioms_and_round_trip() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let grid = GridSpec::default();
        let (tm1, tm2) = reverse_residuals(&reverse_dual(&fam), &grid).unwrap();
        assert_eq!(tm1, 0.0);
        assert!(tm2 < 1e-15);
        assert_eq!(dual_round_trip(&fam, &grid).unwrap(), 0.0);
        let (_, bad) = reverse_residuals(&reverse_dual(&make_corrupted(0.0, 1.0).unwrap()), &grid).unwrap();
        assert!(bad > 0.01);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::default().validate().is_ok());
        assert!(GridSpec::default().with_n_time(1).validate().is_err());
        let g = GridSpec {
            radii: vec![r(0.5), r(0.25)],
            ..GridSpec::default()
        };
        assert!(g.validate().is_err());
        let g = GridSpec {
            n_angles: 4,
            ..GridSpec::default()
        };
        assert!(g.validate().is_err());
    }

    #[test]
    fn radial_residuals_are_tiny() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let grid = GridSpec::default();
        assert_eq!(diagonal_residual(&fam, &grid).unwrap(), 0.0);
        assert!(semigroup_residual(&fam, &grid).unwrap() < 1e-14);
        assert!(non_constancy(&fam, &grid).unwrap().passed);
    }

    #[test]
    fn corrupted_family_is_detected() {
        let fam = make_corrupted(0.0, 2.0).unwrap();
        let grid = GridSpec::default();
        // (s, u, t) = (0, 1, 2) at |z| = 0.9: 0.9·(e^{−2} − e^{−4})
        let oracle = 0.9 * ((-2.0f64).exp() - (-4.0f64).exp());
        let res = semigroup_residual(&fam, &grid).unwrap();
        assert!(res >= oracle - 1e-15);
        assert!(res > 0.01);
    }

    #[test]
    fn loewner_radial_semigroup() {
        let fam = from_loewner_chain(0.0, 1.0, |t: &f64| DiskMap::scale_real((-(1.0 - t)).exp()), 1e-12).unwrap();
        assert!(semigroup_residual(&fam, &GridSpec::default()).unwrap() < 1e-9);
    }

    #[test]
    fn constant_family_fails_ef1() {
        let fam = EvolutionFamily::new("const", 0.0, 1.0, |s: &f64, t: &f64| {
            if s == t {
                Ok(DiskMap::identity())
            } else {
                DiskMap::scale_real(0.0)
            }
        })
        .unwrap();
        assert!(!non_constancy(&fam, &GridSpec::default()).unwrap().passed);
    }

    #[test]
    fn hyperbolic_sup_of_origin_fixing_family_is_zero() {
        for fam in [make_radial(0.0, 1.0).unwrap(), make_rotation(0.0, 1.0, |t| t).unwrap()] {
            let h = hyperbolic_bound_sup(&fam, &GridSpec::default(), DEFAULT_HYPERBOLIC_MARGIN).unwrap();
            assert_eq!(h.sup, 0.0);
            assert!(h.bounded);
        }
    }

    #[test]
    fn real_grid_pairs_respect_interval() {
        let g = GridSpec::default();
        for (x, y) in g.pairs_within(&0.0, &1.0, 0.25).unwrap() {
            assert!(0.0 <= x && x <= y && y <= 1.0);
            assert!((y - x - 0.25).abs() < 1e-15);
        }
        for ((s, t), (s2, t2)) in g.joint_neighbours(&0.0, &1.0, 0.1).unwrap() {
            assert!(s <= t && s2 <= t2 && (0.0..=1.0).contains(&s2) && t2 <= 1.0);
            assert!((s - s2).abs().max((t - t2).abs()) <= 0.1 + 1e-15);
        }
        for (s, t) in g.straddling_pairs(&0.0, &1.0, &0.0, 0.125).unwrap() {
            assert!(s <= 0.0 && 0.0 <= t && t - s <= 0.125);
        }
        assert!(g.straddling_pairs(&0.0, &1.0, &1.5, 0.1).is_err());
    }
}

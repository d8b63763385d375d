//! Randomized audit of the closed-form disk bounds against direct evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diskmap::sample::{halton_disk_points, normalize_at_origin, random_map, MapGrammar};
use crate::diskmap::{
    center_bound, fixed_origin_growth, identity_deviation, landau_radius, lipschitz_bound, schwarz_pick_upper, DiskMap,
    DiskRegion,
};
use crate::error::Result;

use super::univalence_sample_test;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditCheck {
    /// `|ω(z)| ≤ (|z| + |ω(0)|)/(1 + |ω(0)||z|)`.
    SchwarzPick,
    /// `|ω(0)| ≤ (|z| + |ω(z)|)/(1 + |ω(z)||z|)`.
    Center,
    /// Growth of the origin-normalized map.
    FixedOriginGrowth,
    /// Distance of the origin-normalized map from the identity.
    IdentityDeviation,
    Lipschitz,
    /// Injectivity of the normalized map on its Landau disk.
    Landau,
}

impl AuditCheck {
    pub const ALL: [AuditCheck; 6] = [
        AuditCheck::SchwarzPick,
        AuditCheck::Center,
        AuditCheck::FixedOriginGrowth,
        AuditCheck::IdentityDeviation,
        AuditCheck::Lipschitz,
        AuditCheck::Landau,
    ];
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AuditCheck::SchwarzPick => "schwarz_pick",
            AuditCheck::Center => "center",
            AuditCheck::FixedOriginGrowth => "fixed_origin_growth",
            AuditCheck::IdentityDeviation => "identity_deviation",
            AuditCheck::Lipschitz => "lipschitz",
            AuditCheck::Landau => "landau",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub trials: usize,
    pub max_depth: usize,
    pub points: usize,
    /// Sample radius for the pointwise bounds.
    pub radius: f64,
    /// Sample radius for the Lipschitz pairs.
    pub lipschitz_radius: f64,
    pub slack: f64,
    pub seed: u64,
    /// Scale every map by 1.01 so that it leaves the disk; used to show the
    /// audit can fail.
    pub widen: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            trials: 1000,
            max_depth: 6,
            points: 64,
            radius: 0.95,
            lipschitz_radius: 0.7,
            slack: 1e-12,
            seed: 0,
            widen: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub check: AuditCheck,
    pub map: String,
    pub point: Complex64,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    /// Comparisons performed per check.
    pub checked: BTreeMap<AuditCheck, usize>,
    pub violation_counts: BTreeMap<AuditCheck, usize>,
    /// The first few violations, in trial order.
    pub violations: Vec<Violation>,
    /// Evaluation errors (points pushed out of the disk), in trial order.
    pub errors: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violation_counts.values().all(|&n| n == 0) && self.errors.is_empty()
    }

    pub fn total_violations(&self) -> usize {
        self.violation_counts.values().sum()
    }
}

const KEPT_VIOLATIONS: usize = 20;

#[derive(Default)]
struct TrialOutcome {
    checked: BTreeMap<AuditCheck, usize>,
    violations: Vec<Violation>,
    errors: Vec<String>,
}

impl TrialOutcome {
    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        trial: usize,
        check: AuditCheck,
        map: &DiskMap,
        z: Complex64,
        observed: f64,
        bound: f64,
        slack: f64,
    ) {
        *self.checked.entry(check).or_default() += 1;
        if observed.is_nan() || observed > bound + slack {
            self.violations.push(Violation {
                trial,
                check,
                map: map.to_string(),
                point: z,
                observed,
                bound,
            });
        }
    }
}

fn widened(map: DiskMap) -> Result<DiskMap> {
    let wide = DiskMap::custom("1.01z", 1.0, |z| {
        let k = Complex64::new(1.01, 0.0);
        Ok((k * z, k))
    })?;
    Ok(wide.after(&map))
}

fn run_trial(config: &AuditConfig, trial: usize) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let mut map = random_map(&mut rng, config.max_depth, MapGrammar::default());
    if config.widen {
        map = widened(map)?;
    }
    let slack = config.slack;
    let mut out = TrialOutcome::default();
    let origin = Complex64::new(0.0, 0.0);
    let offset = config.seed.wrapping_add((trial * config.points) as u64);

    let w0 = map.eval(origin)?;
    let w0_abs = w0.norm().min(1.0 - f64::EPSILON);
    let points = halton_disk_points(config.points, config.radius, offset);
    for &z in &points {
        let w = map.eval(z)?;
        let bound = schwarz_pick_upper(z.norm(), w0_abs)?;
        out.record(trial, AuditCheck::SchwarzPick, &map, z, w.norm(), bound, slack);
        let bound = center_bound(z.norm(), w.norm().min(1.0 - f64::EPSILON))?;
        out.record(trial, AuditCheck::Center, &map, z, w0.norm(), bound, slack);
    }

    if w0.norm() < 1.0 {
        if let Err(e) = normalized_checks(config, trial, &map, &points, offset, &mut out) {
            out.errors.push(format!("trial {trial}: {e}"));
        }
    }

    let r = config.lipschitz_radius;
    let pairs = halton_disk_points(config.points + 1, r, offset);
    for pair in pairs.windows(2) {
        let (z0, z1) = (pair[0], pair[1]);
        let observed = (map.eval(z1)? - map.eval(z0)?).norm();
        let bound = lipschitz_bound(z0, z1, r)?;
        out.record(trial, AuditCheck::Lipschitz, &map, z1, observed, bound, slack);
    }
    Ok(out)
}

fn normalized_checks(
    config: &AuditConfig,
    trial: usize,
    map: &DiskMap,
    points: &[Complex64],
    offset: u64,
    out: &mut TrialOutcome,
) -> Result<()> {
    let slack = config.slack;
    let origin = Complex64::new(0.0, 0.0);
    {
        let g = normalize_at_origin(map)?;
        let lambda = g.deriv(origin)?;
        if lambda.norm() <= 1.0 {
            for &z in points {
                let gz = g.eval(z)?;
                let bound = fixed_origin_growth(z.norm(), lambda.norm())?;
                out.record(trial, AuditCheck::FixedOriginGrowth, &g, z, gz.norm(), bound, slack);
                let bound = identity_deviation(z.norm(), lambda)?;
                out.record(
                    trial,
                    AuditCheck::IdentityDeviation,
                    &g,
                    z,
                    (gz - z).norm(),
                    bound,
                    slack,
                );
            }
        } else {
            out.record(
                trial,
                AuditCheck::FixedOriginGrowth,
                &g,
                origin,
                lambda.norm(),
                1.0,
                slack,
            );
        }
        if lambda.norm() > 1e-12 && lambda.norm() <= 1.0 {
            let rho = 0.999 * landau_radius(lambda.norm())?;
            let region = DiskRegion::new(rho.min(0.999))?;
            let test = univalence_sample_test(&g, region, config.points, offset)?;
            *out.checked.entry(AuditCheck::Landau).or_default() += 1;
            if let Some((z1, z2)) = test.witness {
                out.violations.push(Violation {
                    trial,
                    check: AuditCheck::Landau,
                    map: g.to_string(),
                    point: z1,
                    observed: (z1 - z2).norm(),
                    bound: 0.0,
                });
            }
        }
    }
    Ok(())
}

/// Draws `trials` random compositions (depth ≤ `max_depth`) over the primitive
/// grammar and checks every closed-form bound at `points` quasi-random points.
///
/// Each trial uses its own ChaCha stream, so the report does not depend on the
/// number of worker threads.
pub fn bound_audit(config: &AuditConfig) -> Result<AuditReport> {
    let outcomes: Vec<std::result::Result<TrialOutcome, String>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial).map_err(|e| format!("trial {trial}: {e}")))
        .collect();

    let mut checked: BTreeMap<AuditCheck, usize> = AuditCheck::ALL.iter().map(|&c| (c, 0)).collect();
    let mut violation_counts = checked.clone();
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(o) => {
                errors.extend(o.errors);
                for (check, n) in o.checked {
                    *checked.entry(check).or_default() += n;
                }
                for v in o.violations {
                    *violation_counts.entry(v.check).or_default() += 1;
                    if violations.len() < KEPT_VIOLATIONS {
                        violations.push(v);
                    }
                }
            }
            Err(e) => errors.push(e),
        }
    }
    Ok(AuditReport {
        config: config.clone(),
        checked,
        violation_counts,
        violations,
        errors,
    })
}

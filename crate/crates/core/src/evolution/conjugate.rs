use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{EvolutionFamily, Time};
use crate::diskmap::DiskMap;
use crate::error::{domain, Result};

type Curve<T> = dyn Fn(&T) -> Result<Complex64> + Send + Sync;

/// A curve `t ↦ c(t)` inside the unit disk.
#[derive(Clone)]
pub struct Trajectory<T: Time = f64> {
    curve: Arc<Curve<T>>,
}

impl<T: Time> Trajectory<T> {
    pub fn new<F>(curve: F) -> Self
    where
        F: Fn(&T) -> Result<Complex64> + Send + Sync + 'static,
    {
        Trajectory { curve: Arc::new(curve) }
    }

    /// `c(t)`; fails if the curve leaves the open disk.
    pub fn at(&self, t: &T) -> Result<Complex64> {
        let c = (self.curve)(t)?;
        if c.norm() < 1.0 {
            Ok(c)
        } else {
            Err(domain(format!("trajectory point c({t}) = {c} is not inside the disk")))
        }
    }
}

impl<T: Time> fmt::Debug for Trajectory<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Trajectory(..)")
    }
}

/// `ω̃_{s,t} = σ_{c(t)}⁻¹ ∘ ω_{s,t} ∘ σ_{c(s)}`.
///
/// Conjugating by any curve of disk automorphisms preserves EF2 and EF3 since
/// the inner `σ_{c(u)} ∘ σ_{c(u)}⁻¹` factors cancel. When `c(s) = c(t) = 0`
/// the original transition tree is returned unchanged.
pub fn conjugate_by<T: Time>(
    family: &EvolutionFamily<T>,
    trajectory: &Trajectory<T>,
    label: impl Into<String>,
) -> Result<EvolutionFamily<T>> {
    let base = family.clone();
    let curve = trajectory.clone();
    EvolutionFamily::new(label, family.start().clone(), family.end().clone(), move |s, t| {
        let inner = base.at(s, t)?;
        let cs = curve.at(s)?;
        let ct = curve.at(t)?;
        if cs == Complex64::new(0.0, 0.0) && ct == Complex64::new(0.0, 0.0) {
            return Ok(inner);
        }
        Ok(DiskMap::mobius(-ct)?.after(&inner).after(&DiskMap::mobius(cs)?))
    })
}

/// Conjugates `family` by the orbit `c(t) = ω_{a,t}(z₀)` so that every
/// transition of the result fixes the origin. Returns the conjugated family and
/// the orbit.
///
/// Since `ω_{s,t}(c(s)) = c(t)`, the new family satisfies `ω̃_{s,t}(0) = 0` and
/// `ω̃'_{s,t}(0) = (1 − |c(s)|²)/(1 − |c(t)|²) · ω'_{s,t}(c(s))`.
pub fn conjugate_to_fix_origin<T: Time>(
    family: &EvolutionFamily<T>,
    z0: Complex64,
) -> Result<(EvolutionFamily<T>, Trajectory<T>)> {
    if z0.norm() >= 1.0 {
        return Err(domain(format!("base point {z0} must lie inside the disk")));
    }
    let base = family.clone();
    let trajectory = Trajectory::new(move |t: &T| base.eval(base.start(), t, z0));
    let label = format!("{}@fix0", family.label());
    let conjugated = conjugate_by(family, &trajectory, label)?;
    Ok((conjugated, trajectory))
}

/// `σ_{c(t)}⁻¹ ∘ ω_{s,t} ∘ σ_{c(s)}` for an independent curve `c`; the result
/// generally moves the origin.
pub fn make_mobius_conjugated<T: Time>(base: &EvolutionFamily<T>, curve: Trajectory<T>) -> Result<EvolutionFamily<T>> {
    conjugate_by(base, &curve, format!("mobius-conjugated:{}", base.label()))
}

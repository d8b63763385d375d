use num_rational::BigRational;

use super::witness::{approximation_data, near_zero_vectors};
use super::{AdditiveSpec, TimeVector};
use crate::diagnostics::{delta_ladder, GridSpec, TimeGrid};
use crate::error::{domain, Result};
use crate::evolution::Time;

/// Lattice-aware sample grid for Hamel families.
///
/// Uniform float grids never meet the irrational lattice directions, so the
/// sample set adds, for every gap width, the convergent approximations
/// `a + (p_n/q_n)·b₀ ≈ a + c·b_j` (and the mirrored points at `b`) together
/// with the short vectors `p_n·b₀ − q_n·c·b_j` used for diagonal probes.
#[derive(Debug, Clone)]
pub struct LatticeGrid {
    grid: GridSpec,
    spec: AdditiveSpec,
}

impl LatticeGrid {
    pub fn new(spec: &AdditiveSpec, grid: GridSpec) -> Result<Self> {
        grid.validate()?;
        Ok(LatticeGrid {
            grid,
            spec: spec.clone(),
        })
    }

    /// Exact rational approximation of a real step, along `b₀`.
    fn step(&self, delta: f64) -> Result<TimeVector> {
        let b0 = self.spec.basis().values()[0];
        let q = BigRational::from_float(delta / b0).ok_or_else(|| domain(format!("step {delta} is not finite")))?;
        TimeVector::along(self.spec.basis().clone(), 0, q)
    }

    fn uniform(&self, a: &TimeVector, b: &TimeVector, n: usize) -> Result<Vec<TimeVector>> {
        let span = b.checked_sub(a)?;
        let last = (n.max(2) - 1) as i64;
        (0..=last)
            .map(|k| a.checked_add(&span.scaled(&TimeVector::ratio(k, last))))
            .collect()
    }

    /// `(x_n, x*)` pairs of convergent witnesses at both ends, with their real
    /// distance.
    fn witness_pairs(&self, a: &TimeVector, b: &TimeVector) -> Result<Vec<(TimeVector, TimeVector, f64)>> {
        let Some(j) = self.spec.nonlinear_direction() else {
            return Ok(Vec::new());
        };
        let length = b.real_value() - a.real_value();
        let (c, approximants) = approximation_data(&self.spec, 0, j, length)?;
        let basis = self.spec.basis().clone();
        let step = TimeVector::along(basis.clone(), j, c)?;
        let right_limit = a.checked_add(&step)?;
        let left_limit = b.checked_sub(&step)?;
        let within = |t: &TimeVector| a.precedes(t) && t.precedes(b);
        let mut out = Vec::new();
        for conv in &approximants {
            let offset = TimeVector::along(basis.clone(), 0, conv.clone())?;
            let t = a.checked_add(&offset)?;
            let s = b.checked_sub(&offset)?;
            for (x, limit) in [(t, &right_limit), (s, &left_limit)] {
                if within(&x) && within(limit) {
                    let dist = x.checked_sub(limit)?.real_value().abs();
                    let pair = if x.precedes(limit) {
                        (x, limit.clone())
                    } else {
                        (limit.clone(), x)
                    };
                    out.push((pair.0, pair.1, dist));
                }
            }
        }
        Ok(out)
    }
}

impl TimeGrid<TimeVector> for LatticeGrid {
    fn spec(&self) -> &GridSpec {
        &self.grid
    }

    fn times(&self, a: &TimeVector, b: &TimeVector) -> Result<Vec<TimeVector>> {
        self.uniform(a, b, self.grid.n_time)
    }

    fn deltas(&self, a: &TimeVector, b: &TimeVector) -> Vec<f64> {
        delta_ladder(b.real_value() - a.real_value(), self.grid.levels)
    }

    fn pairs_within(&self, a: &TimeVector, b: &TimeVector, delta: f64) -> Result<Vec<(TimeVector, TimeVector)>> {
        let h = self.step(delta)?;
        let mut pairs = Vec::new();
        for t in self.times(a, b)? {
            let up = t.checked_add(&h)?;
            if up.precedes(b) {
                pairs.push((t.clone(), up));
            }
            let down = t.checked_sub(&h)?;
            if a.precedes(&down) {
                pairs.push((down, t));
            }
        }
        for (x, y, dist) in self.witness_pairs(a, b)? {
            if dist <= delta {
                pairs.push((x, y));
            }
        }
        Ok(pairs)
    }

    fn joint_neighbours(
        &self,
        a: &TimeVector,
        b: &TimeVector,
        delta: f64,
    ) -> Result<Vec<((TimeVector, TimeVector), (TimeVector, TimeVector))>> {
        let h = self.step(delta)?;
        let zero = TimeVector::zero(self.spec.basis().clone());
        let shifts = [h.negated(), zero.clone(), h];
        let times = self.times(a, b)?;
        let admissible = |s: &TimeVector, t: &TimeVector| a.precedes(s) && s.precedes(t) && t.precedes(b);
        let mut out = Vec::new();
        for (i, s) in times.iter().enumerate() {
            for t in &times[i..] {
                for ds in &shifts {
                    for dt in &shifts {
                        if ds.is_zero() && dt.is_zero() {
                            continue;
                        }
                        let (s2, t2) = (s.checked_add(ds)?, t.checked_add(dt)?);
                        if admissible(&s2, &t2) {
                            out.push(((s.clone(), t.clone()), (s2, t2)));
                        }
                    }
                }
            }
        }
        for (x, y, dist) in self.witness_pairs(a, b)? {
            if dist > delta {
                continue;
            }
            // move one parameter at a time, keeping the other at an endpoint
            if admissible(a, &x) && admissible(a, &y) {
                out.push(((a.clone(), x.clone()), (a.clone(), y.clone())));
            }
            if admissible(&x, b) && admissible(&y, b) {
                out.push(((x.clone(), b.clone()), (y, b.clone())));
            }
        }
        Ok(out)
    }

    fn diagonal_centers(&self, a: &TimeVector, b: &TimeVector) -> Result<Vec<TimeVector>> {
        self.uniform(a, b, self.grid.n_centers)
    }

    fn straddling_pairs(
        &self,
        a: &TimeVector,
        b: &TimeVector,
        c: &TimeVector,
        gap: f64,
    ) -> Result<Vec<(TimeVector, TimeVector)>> {
        if !(a.precedes(c) && c.precedes(b)) {
            return Err(domain(format!("center {c} must lie in [{a}, {b}]")));
        }
        let mut out = vec![(c.clone(), c.clone())];
        let h = self.step(gap)?;
        for k in 0..=4 {
            let before = h.scaled(&TimeVector::ratio(k, 4));
            let after = h.checked_sub(&before)?;
            let s = c.checked_sub(&before)?;
            let t = c.checked_add(&after)?;
            if a.precedes(&s) && t.precedes(b) {
                out.push((s, t));
            }
        }
        let length = b.real_value() - a.real_value();
        for d in near_zero_vectors(&self.spec, length)? {
            if d.real_value() > gap {
                continue;
            }
            let up = c.checked_add(&d)?;
            if up.precedes(b) {
                out.push((c.clone(), up));
            } else {
                let down = c.checked_sub(&d)?;
                if a.precedes(&down) {
                    out.push((down, c.clone()));
                }
            }
        }
        Ok(out)
    }

    fn finest_gap(&self, a: &TimeVector, b: &TimeVector) -> f64 {
        (b.real_value() - a.real_value()) / (self.grid.n_time.max(2) - 1) as f64
    }
}

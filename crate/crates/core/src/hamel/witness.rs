use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::surd::{convergents, float_partial_quotients, QuadraticSurd};
use super::{additive_eval, AdditiveSpec, TimeVector};
use crate::diagnostics::lu_distance;
use crate::diskmap::DiskRegion;
use crate::error::{Error, Result};
use crate::evolution::{EvolutionFamily, Time};

/// Number of convergents in a witness sequence.
pub const WITNESS_LENGTH: usize = 20;

const WITNESS_ANGLES: usize = 64;

/// One element `x_n` of a witness sequence.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessPoint {
    /// 1-based index of the convergent.
    pub n: usize,
    pub convergent: String,
    pub time: TimeVector,
    /// Locally uniform distance between the transitions at `x_n` and at the limit.
    pub distance: f64,
}

/// Sequences `t_n → t*` (right parameter) and `s_n → s*` (left parameter)
/// along which the transitions stay a fixed distance apart.
#[derive(Debug, Clone, Serialize)]
pub struct DiscontinuityWitness {
    pub radius: f64,
    /// Lattice direction approximated by the convergents.
    pub rational_direction: usize,
    /// Lattice direction of the limit.
    pub limit_direction: usize,
    /// `t* = a + c·b_j`.
    pub right_limit: TimeVector,
    pub right: Vec<WitnessPoint>,
    /// `s* = b − c·b_j`.
    pub left_limit: TimeVector,
    pub left: Vec<WitnessPoint>,
    /// Smallest distance over `n ≥ 3` in each sequence.
    pub gap_right: f64,
    pub gap_left: f64,
    pub gap: f64,
    /// Distance in the limit `n → ∞`, from the closed form.
    pub limit_gap: f64,
}

impl DiscontinuityWitness {
    /// The right-parameter sequence `t_n`.
    pub fn right_sequence(&self) -> Vec<TimeVector> {
        self.right.iter().map(|p| p.time.clone()).collect()
    }

    /// The left-parameter sequence `s_n`.
    pub fn left_sequence(&self) -> Vec<TimeVector> {
        self.left.iter().map(|p| p.time.clone()).collect()
    }
}

/// Scale `c = ±2^{−m}` that puts `c·b_j` inside `(0, 0.9·(b − a)]`, and the
/// continued-fraction convergents of `x = c·b_j / b_i`.
pub(crate) fn approximation_data(
    spec: &AdditiveSpec,
    i: usize,
    j: usize,
    length: f64,
) -> Result<(BigRational, Vec<BigRational>)> {
    let elements = spec.basis().elements();
    let (bi, bj) = (&elements[i], &elements[j]);
    let mut c = if bj.value() > 0.0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let half = BigRational::new(1.into(), 2.into());
    while (c.to_f64().unwrap_or(0.0) * bj.value()).abs() > 0.9 * length {
        c *= &half;
    }
    let partial = match (bi.as_scaled_root(), bj.as_scaled_root()) {
        (Some((ai, ni)), Some((aj, nj))) => {
            // c·aj√nj / (ai√ni) = (c·aj / (ai·ni))·√(ni·nj)
            let k = &c * &aj / (&ai * BigRational::from_integer(BigInt::from(ni)));
            let d = BigInt::from(ni) * BigInt::from(nj);
            QuadraticSurd::scaled_sqrt(&k, &d)?.partial_quotients(WITNESS_LENGTH)
        }
        _ => float_partial_quotients(c.to_f64().unwrap_or(f64::NAN) * bj.value() / bi.value(), WITNESS_LENGTH),
    };
    Ok((c, convergents(&partial)))
}

/// Exhibits the discontinuity of a Hamel family in both parameters.
///
/// With `i = 0` and `j` the first direction where `f` is not proportional to
/// the identity, the convergents `p_n/q_n` of `c·b_j/b_0` give lattice times
/// `t_n = a + (p_n/q_n)·b_0 → t* = a + c·b_j` in real value, while
/// `f(t_n − a) → (c·b_j/b_0)·f(b_0) ≠ c·f(b_j) = f(t* − a)`. The same
/// convergents give `s_n = b − (p_n/q_n)·b_0 → s* = b − c·b_j`.
/// Points outside `[a, b]` are skipped.
///
/// Fails with [`Error::NotDiscontinuous`] if the images are proportional to
/// the basis values, in which case `f` is linear and the family continuous.
pub fn discontinuity_witness(
    spec: &AdditiveSpec,
    family: &EvolutionFamily<TimeVector>,
    r: DiskRegion,
) -> Result<DiscontinuityWitness> {
    let j = spec.nonlinear_direction().ok_or(Error::NotDiscontinuous)?;
    let i = 0;
    let (a, b) = (family.start().clone(), family.end().clone());
    let length = b.real_value() - a.real_value();
    let (c, approximants) = approximation_data(spec, i, j, length)?;
    let basis = spec.basis().clone();
    let step = TimeVector::along(basis.clone(), j, c.clone())?;
    let right_limit = a.checked_add(&step)?;
    let left_limit = b.checked_sub(&step)?;

    let right_target = family.at(&a, &right_limit)?;
    let left_target = family.at(&left_limit, &b)?;
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (k, conv) in approximants.iter().enumerate() {
        let offset = TimeVector::along(basis.clone(), i, conv.clone())?;
        let t = a.checked_add(&offset)?;
        if family.contains(&t) {
            let distance = lu_distance(&family.at(&a, &t)?, &right_target, r, WITNESS_ANGLES)?;
            right.push(WitnessPoint {
                n: k + 1,
                convergent: conv.to_string(),
                time: t,
                distance,
            });
        }
        let s = b.checked_sub(&offset)?;
        if family.contains(&s) {
            let distance = lu_distance(&family.at(&s, &b)?, &left_target, r, WITNESS_ANGLES)?;
            left.push(WitnessPoint {
                n: k + 1,
                convergent: conv.to_string(),
                time: s,
                distance,
            });
        }
    }

    let tail_min = |points: &[WitnessPoint]| {
        let tail: Vec<f64> = points.iter().filter(|p| p.n >= 3).map(|p| p.distance).collect();
        let source: Vec<f64> = if tail.is_empty() {
            points.iter().map(|p| p.distance).collect()
        } else {
            tail
        };
        source.into_iter().fold(f64::INFINITY, f64::min)
    };
    let gap_right = tail_min(&right);
    let gap_left = tail_min(&left);

    let f = spec.image_values();
    let bv = spec.basis().values();
    let x = c.to_f64().unwrap_or(f64::NAN) * bv[j] / bv[i];
    let limit_angle = x * f[i];
    let target_angle = additive_eval(spec, &step)?;
    let limit_gap = r.radius() * (num_complex::Complex64::from_polar(1.0, limit_angle - target_angle) - 1.0).norm();

    Ok(DiscontinuityWitness {
        radius: r.radius(),
        rational_direction: i,
        limit_direction: j,
        right_limit,
        right,
        left_limit,
        left,
        gap_right,
        gap_left,
        gap: gap_right.min(gap_left),
        limit_gap,
    })
}

/// `p·b_i − q·c·b_j` for each convergent `p/q`: lattice vectors of tiny real
/// value whose image under `f` does not shrink.
pub(crate) fn near_zero_vectors(spec: &AdditiveSpec, length: f64) -> Result<Vec<TimeVector>> {
    let Some(j) = spec.nonlinear_direction() else {
        return Ok(Vec::new());
    };
    let (c, approximants) = approximation_data(spec, 0, j, length)?;
    let basis = spec.basis().clone();
    approximants
        .iter()
        .map(|conv| {
            let p = BigRational::from_integer(conv.numer().clone());
            let q = BigRational::from_integer(conv.denom().clone());
            let u = TimeVector::along(basis.clone(), 0, p)?;
            let v = TimeVector::along(basis.clone(), j, q * &c)?;
            let d = u.checked_sub(&v)?;
            Ok(if d.signum() == std::cmp::Ordering::Less {
                d.negated()
            } else {
                d
            })
        })
        .collect()
}

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{Basis, TimeVector};
use crate::diskmap::DiskMap;
use crate::error::{Error, Result};
use crate::evolution::{EvolutionFamily, Time};

/// An additive function on the lattice, given by its values on the basis.
///
/// Images are stored as the exact rationals equal to their `f64` values, so
/// `f(t) = Σ qᵢ f(bᵢ)` is computed without rounding until the final
/// conversion to an angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveSpec {
    basis: Arc<Basis>,
    images: Vec<BigRational>,
    labels: Vec<String>,
}

impl AdditiveSpec {
    /// `labels` name the images for reports (e.g. `"pi"`).
    pub fn new(basis: Arc<Basis>, images: &[f64], labels: Vec<String>) -> Result<Self> {
        if images.len() != basis.len() || labels.len() != basis.len() {
            return Err(Error::BasisMismatch(format!(
                "{} images for a basis of length {}",
                images.len(),
                basis.len()
            )));
        }
        let images = images
            .iter()
            .map(|&x| BigRational::from_float(x).ok_or_else(|| Error::Config(format!("image {x} is not finite"))))
            .collect::<Result<_>>()?;
        Ok(AdditiveSpec { basis, images, labels })
    }

    /// Basis `(1, √2)` with `f(1) = π`, `f(√2) = 0`.
    pub fn default_pi() -> Self {
        AdditiveSpec::new(
            Arc::new(Basis::default_pair()),
            &[std::f64::consts::PI, 0.0],
            vec!["pi".into(), "0".into()],
        )
        .expect("matching lengths")
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn images(&self) -> &[BigRational] {
        &self.images
    }

    pub fn image_values(&self) -> Vec<f64> {
        self.images.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn image_labels(&self) -> &[String] {
        &self.labels
    }

    /// A lattice point from integer-ratio coordinates.
    pub fn point(&self, coords: &[(i64, i64)]) -> Result<TimeVector> {
        TimeVector::new(
            self.basis.clone(),
            coords.iter().map(|&(p, q)| TimeVector::ratio(p, q)).collect(),
        )
    }

    /// First `j` with `f(b_j)·b₀ ≠ f(b₀)·b_j` (relative tolerance 10⁻¹²), i.e. a
    /// direction along which `f` is not multiplication by a constant.
    pub fn nonlinear_direction(&self) -> Option<usize> {
        let b = self.basis.values();
        let f = self.image_values();
        (1..b.len()).find(|&j| {
            let lhs = f[j] * b[0];
            let rhs = f[0] * b[j];
            (lhs - rhs).abs() > 1e-12 * lhs.abs().max(rhs.abs())
        })
    }

    pub fn is_linear(&self) -> bool {
        self.nonlinear_direction().is_none()
    }
}

/// `f(t) = Σ qᵢ f(bᵢ)` as an exact rational.
pub fn additive_eval_exact(spec: &AdditiveSpec, t: &TimeVector) -> Result<BigRational> {
    if !Arc::ptr_eq(spec.basis(), t.basis()) && **spec.basis() != **t.basis() {
        return Err(Error::BasisMismatch(format!(
            "time over ({}) evaluated with a spec over ({})",
            t.basis().labels().join(", "),
            spec.basis().labels().join(", ")
        )));
    }
    Ok(t.coords()
        .iter()
        .zip(spec.images())
        .fold(BigRational::zero(), |acc, (q, y)| acc + q * y))
}

/// `f(t)` converted to `f64`.
pub fn additive_eval(spec: &AdditiveSpec, t: &TimeVector) -> Result<f64> {
    Ok(additive_eval_exact(spec, t)?.to_f64().unwrap_or(f64::NAN))
}

/// `f(u − s) + f(t − u) − f(t − s)` in exact arithmetic; zero for every triple.
pub fn semigroup_angle_defect(
    spec: &AdditiveSpec,
    s: &TimeVector,
    u: &TimeVector,
    t: &TimeVector,
) -> Result<BigRational> {
    let first = additive_eval_exact(spec, &u.checked_sub(s)?)?;
    let second = additive_eval_exact(spec, &t.checked_sub(u)?)?;
    let whole = additive_eval_exact(spec, &t.checked_sub(s)?)?;
    Ok(first + second - whole)
}

/// `ω_{s,t}(z) = e^{i f(t−s)} z` on `[a, b]`. `ω_{t,t}` is the identity node.
///
/// Fails with [`Error::Lattice`] if an endpoint or a queried time is not over
/// the spec's basis.
pub fn hamel_family(spec: &AdditiveSpec, a: TimeVector, b: TimeVector) -> Result<EvolutionFamily<TimeVector>> {
    for end in [&a, &b] {
        if **end.basis() != **spec.basis() {
            return Err(Error::Lattice(end.to_string()));
        }
    }
    let spec = spec.clone();
    EvolutionFamily::new("hamel", a, b, move |s: &TimeVector, t: &TimeVector| {
        for x in [s, t] {
            if !Arc::ptr_eq(x.basis(), spec.basis()) && **x.basis() != **spec.basis() {
                return Err(Error::Lattice(x.to_string()));
            }
        }
        let gap = t.checked_sub(s)?;
        if gap.is_zero() {
            return Ok(DiskMap::identity());
        }
        Ok(DiskMap::rotation(additive_eval(&spec, &gap)?))
    })
}

/// Exact EF1–EF3 check of a Hamel family on a set of lattice times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactAxioms {
    /// Every transition is a rotation (or the identity), hence non-constant.
    pub ef1: bool,
    /// `t − t` has zero coordinates and `ω_{t,t}` is the identity node.
    pub ef2: bool,
    /// Every angle defect vanishes exactly.
    pub ef3: bool,
    pub times: usize,
    pub triples: usize,
}

impl ExactAxioms {
    pub fn passed(&self) -> bool {
        self.ef1 && self.ef2 && self.ef3
    }
}

pub fn exact_axiom_check(
    spec: &AdditiveSpec,
    family: &EvolutionFamily<TimeVector>,
    times: &[TimeVector],
) -> Result<ExactAxioms> {
    use crate::diskmap::MapNode;
    let mut ef1 = true;
    let mut ef2 = true;
    let mut ef3 = true;
    let mut triples = 0;
    for (i, s) in times.iter().enumerate() {
        ef2 &= s.checked_sub(s)?.is_zero() && family.at(s, s)? == DiskMap::identity();
        for (j, u) in times.iter().enumerate().skip(i) {
            ef1 &= matches!(family.at(s, u)?.node(), MapNode::Rotation(_) | MapNode::Identity);
            for t in times.iter().skip(j) {
                if !(s.precedes(u) && u.precedes(t)) {
                    continue;
                }
                triples += 1;
                ef3 &= semigroup_angle_defect(spec, s, u, t)?.is_zero();
            }
        }
    }
    Ok(ExactAxioms {
        ef1,
        ef2,
        ef3,
        times: times.len(),
        triples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamel::BasisElement;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn evaluation_examples() {
        let spec = AdditiveSpec::default_pi();
        assert_eq!(
            additive_eval(&spec, &spec.point(&[(0, 1), (0, 1)]).unwrap()).unwrap(),
            0.0
        );
        let t = spec.point(&[(3, 2), (0, 1)]).unwrap();
        assert!((additive_eval(&spec, &t).unwrap() - 1.5 * PI).abs() < 1e-15);
        let root = spec.point(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(additive_eval(&spec, &root).unwrap(), 0.0);
        assert!((root.real() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn family_examples() {
        let spec = AdditiveSpec::default_pi();
        let fam = hamel_family(
            &spec,
            spec.point(&[(0, 1), (0, 1)]).unwrap(),
            spec.point(&[(2, 1), (0, 1)]).unwrap(),
        )
        .unwrap();
        let p = |x: i64, y: i64| spec.point(&[(x, y), (0, 1)]).unwrap();
        assert_eq!(fam.at(&p(1, 3), &p(1, 3)).unwrap(), DiskMap::identity());
        let z = Complex64::new(0.3, 0.4);
        let w = fam.eval(&p(0, 1), &p(1, 1), z).unwrap();
        assert!((w + z).norm() < 1e-15);
        let half = fam
            .at(&p(1, 2), &p(1, 1))
            .unwrap()
            .after(&fam.at(&p(0, 1), &p(1, 2)).unwrap());
        assert!((half.eval(z).unwrap() + z).norm() < 1e-15);
        assert!(semigroup_angle_defect(&spec, &p(0, 1), &p(1, 2), &p(1, 1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn foreign_basis_is_not_a_lattice_point() {
        let spec = AdditiveSpec::default_pi();
        let other = Arc::new(
            Basis::new(vec![
                BasisElement::Rational(TimeVector::ratio(1, 1)),
                BasisElement::Sqrt(3),
            ])
            .unwrap(),
        );
        let fam = hamel_family(
            &spec,
            spec.point(&[(0, 1), (0, 1)]).unwrap(),
            spec.point(&[(2, 1), (0, 1)]).unwrap(),
        )
        .unwrap();
        let x = TimeVector::new(other.clone(), vec![TimeVector::ratio(1, 2), TimeVector::ratio(0, 1)]).unwrap();
        let y = TimeVector::new(other, vec![TimeVector::ratio(1, 1), TimeVector::ratio(0, 1)]).unwrap();
        assert!(matches!(fam.at(&x, &y), Err(Error::Lattice(_))));
        assert!(matches!(additive_eval(&spec, &x), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn linearity_detection() {
        assert!(!AdditiveSpec::default_pi().is_linear());
        let linear = AdditiveSpec::new(
            Arc::new(Basis::default_pair()),
            &[PI, PI * 2f64.sqrt()],
            vec!["pi".into(), "pi*sqrt2".into()],
        )
        .unwrap();
        assert!(linear.is_linear());
    }

    fn lattice_time() -> impl Strategy<Value = (i64, i64, i64, i64)> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn additivity_is_exact(x in lattice_time(), y in lattice_time()) {
            let spec = AdditiveSpec::default_pi();
            let t = spec.point(&[(x.0, x.1), (x.2, x.3)]).unwrap();
            let u = spec.point(&[(y.0, y.1), (y.2, y.3)]).unwrap();
            let lhs = additive_eval_exact(&spec, &t.checked_add(&u).unwrap()).unwrap();
            let rhs = additive_eval_exact(&spec, &t).unwrap() + additive_eval_exact(&spec, &u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn semigroup_is_exact(x in lattice_time(), y in lattice_time(), z in lattice_time()) {
            let spec = AdditiveSpec::new(
                Arc::new(Basis::default_pair()),
                &[PI, 0.7],
                vec!["pi".into(), "0.7".into()],
            ).unwrap();
            let mut ts = [
                spec.point(&[(x.0, x.1), (x.2, x.3)]).unwrap(),
                spec.point(&[(y.0, y.1), (y.2, y.3)]).unwrap(),
                spec.point(&[(z.0, z.1), (z.2, z.3)]).unwrap(),
            ];
            ts.sort_by(|p, q| p.checked_sub(q).unwrap().signum());
            prop_assert!(semigroup_angle_defect(&spec, &ts[0], &ts[1], &ts[2]).unwrap().is_zero());
            let composed = additive_eval(&spec, &ts[1].checked_sub(&ts[0]).unwrap()).unwrap()
                + additive_eval(&spec, &ts[2].checked_sub(&ts[1]).unwrap()).unwrap();
            let direct = additive_eval(&spec, &ts[2].checked_sub(&ts[0]).unwrap()).unwrap();
            prop_assert!((composed - direct).abs() < 1e-15 * direct.abs().max(1.0) * 8.0);
        }
    }
}

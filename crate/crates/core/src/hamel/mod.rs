//! A discontinuous evolution family `ω_{s,t}(z) = e^{i f(t−s)} z` built from
//! an additive function `f` that is not linear.
//!
//! Such an `f` cannot be written down on all of ℝ without a Hamel basis. Here
//! time is restricted to the ℚ-span of a finite, declared basis
//! `(b₁, …, b_m)` (default `(1, √2)`), where `f(Σ qᵢbᵢ) = Σ qᵢ f(bᵢ)` is exactly
//! additive and, for non-proportional images, discontinuous along sequences
//! that stay on the lattice. Coordinates are arbitrary-precision rationals so
//! that the semigroup identity holds exactly, not just to rounding.

mod additive;
mod config;
mod lattice;
mod surd;
mod witness;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::evolution::Time;

pub use additive::{
    additive_eval, additive_eval_exact, exact_axiom_check, hamel_family, semigroup_angle_defect, AdditiveSpec,
    ExactAxioms,
};
pub use config::{parse_basis_element, parse_image, HamelConfig, DEFAULT_SPEC_TOML};
pub use lattice::LatticeGrid;
pub use surd::{convergents, float_partial_quotients, sqrt_convergents, QuadraticSurd};
pub use witness::{discontinuity_witness, DiscontinuityWitness, WitnessPoint, WITNESS_LENGTH};

/// One real number of the basis.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisElement {
    Rational(BigRational),
    /// `√n` for a non-square `n`.
    Sqrt(u64),
    /// A real known only as a float.
    Float(f64),
}

impl BasisElement {
    pub fn value(&self) -> f64 {
        match self {
            BasisElement::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            BasisElement::Sqrt(n) => (*n as f64).sqrt(),
            BasisElement::Float(x) => *x,
        }
    }

    /// `(α, n)` with the element equal to `α√n`, or `None` for floats.
    pub(crate) fn as_scaled_root(&self) -> Option<(BigRational, u64)> {
        match self {
            BasisElement::Rational(q) => Some((q.clone(), 1)),
            BasisElement::Sqrt(n) => Some((BigRational::one(), *n)),
            BasisElement::Float(_) => None,
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Rational(q) => write!(f, "{q}"),
            BasisElement::Sqrt(n) => write!(f, "sqrt{n}"),
            BasisElement::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// A finite family of reals, asserted to be ℚ-linearly independent.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    elements: Vec<BasisElement>,
}

impl Basis {
    /// Rejects empty bases, zero elements and pairs of exact elements whose
    /// ratio is rational. Independence of float elements is taken on trust.
    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("basis must not be empty".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.value() == 0.0 || !e.value().is_finite() {
                return Err(Error::Domain(format!(
                    "basis element {e} must be a nonzero finite real"
                )));
            }
            if let BasisElement::Sqrt(n) = e {
                let root = BigInt::from(*n).sqrt();
                if &root * &root == BigInt::from(*n) {
                    return Err(Error::Domain(format!("{e} is rational; declare it as {root}")));
                }
            }
            for other in &elements[..i] {
                if let (Some((_, n1)), Some((_, n2))) = (other.as_scaled_root(), e.as_scaled_root()) {
                    let prod = BigInt::from(n1) * BigInt::from(n2);
                    let root = prod.sqrt();
                    if &root * &root == prod {
                        return Err(Error::Domain(format!(
                            "basis elements {other} and {e} are rationally dependent"
                        )));
                    }
                }
            }
        }
        Ok(Basis { elements })
    }

    /// `(1, √2)`.
    pub fn default_pair() -> Self {
        Basis::new(vec![BasisElement::Rational(BigRational::one()), BasisElement::Sqrt(2)])
            .expect("1 and √2 are independent")
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.elements.iter().map(BasisElement::value).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }

    /// Index of the only irrational exact element, when every other element is
    /// rational. In that case signs are decided exactly.
    fn single_root(&self) -> Option<Option<usize>> {
        let mut root = None;
        for (i, e) in self.elements.iter().enumerate() {
            match e {
                BasisElement::Rational(_) => {}
                BasisElement::Sqrt(_) if root.is_none() => root = Some(i),
                _ => return None,
            }
        }
        Some(root)
    }
}

/// A lattice point `Σ qᵢ bᵢ` with exact rational coordinates.
#[derive(Clone)]
pub struct TimeVector {
    basis: Arc<Basis>,
    coords: Vec<BigRational>,
}

impl TimeVector {
    pub fn new(basis: Arc<Basis>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != basis.len() {
            return Err(Error::BasisMismatch(format!(
                "{} coordinates for a basis of length {}",
                coords.len(),
                basis.len()
            )));
        }
        Ok(TimeVector { basis, coords })
    }

    pub fn zero(basis: Arc<Basis>) -> Self {
        let coords = vec![BigRational::zero(); basis.len()];
        TimeVector { basis, coords }
    }

    /// `q·bᵢ`.
    pub fn along(basis: Arc<Basis>, i: usize, q: BigRational) -> Result<Self> {
        let mut v = TimeVector::zero(basis);
        let n = v.coords.len();
        let slot = v
            .coords
            .get_mut(i)
            .ok_or_else(|| Error::BasisMismatch(format!("index {i} out of range for basis of length {n}")))?;
        *slot = q;
        Ok(v)
    }

    /// Integer ratio `p/q` as an exact rational.
    pub fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn same_basis(&self, other: &TimeVector) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }

    fn check_basis(&self, other: &TimeVector) -> Result<()> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(Error::BasisMismatch(format!(
                "({}) vs ({})",
                self.basis.labels().join(", "),
                other.basis.labels().join(", ")
            )))
        }
    }

    pub fn checked_add(&self, other: &TimeVector) -> Result<TimeVector> {
        self.check_basis(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect();
        Ok(TimeVector {
            basis: self.basis.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &TimeVector) -> Result<TimeVector> {
        self.check_basis(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(x, y)| x - y).collect();
        Ok(TimeVector {
            basis: self.basis.clone(),
            coords,
        })
    }

    pub fn scaled(&self, q: &BigRational) -> TimeVector {
        TimeVector {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|x| x * q).collect(),
        }
    }

    /// `Σ qᵢ bᵢ` in floating point. For reporting and gap widths only.
    pub fn real(&self) -> f64 {
        self.coords
            .iter()
            .zip(self.basis.elements())
            .map(|(q, b)| q.to_f64().unwrap_or(f64::NAN) * b.value())
            .sum()
    }

    /// Sign of the real value: exact when the basis has at most one square
    /// root and otherwise rational elements, floating point otherwise.
    pub fn signum(&self) -> Ordering {
        match self.basis.single_root() {
            Some(root) => {
                let mut rational = BigRational::zero();
                let mut radical = (BigRational::zero(), 1u64);
                for (i, (q, b)) in self.coords.iter().zip(self.basis.elements()).enumerate() {
                    match b {
                        BasisElement::Rational(r) => rational += q * r,
                        BasisElement::Sqrt(n) if Some(i) == root => radical = (q.clone(), *n),
                        _ => unreachable!("single_root admits only rationals and one root"),
                    }
                }
                exact_sign(&rational, &radical.0, radical.1)
            }
            None => self.real().partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }
}

/// Sign of `a + b√n` for non-square `n`.
fn exact_sign(a: &BigRational, b: &BigRational, n: u64) -> Ordering {
    let sa = a.signum();
    let sb = b.signum();
    let ord = |x: &BigRational| x.cmp(&BigRational::zero());
    if b.is_zero() {
        return ord(a);
    }
    if a.is_zero() || sa == sb {
        return ord(b);
    }
    let a2 = a * a;
    let b2n = b * b * BigRational::from_integer(BigInt::from(n));
    match a2.cmp(&b2n) {
        Ordering::Greater => ord(a),
        Ordering::Less => ord(b),
        Ordering::Equal => Ordering::Equal,
    }
}

impl PartialEq for TimeVector {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) && self.coords == other.coords
    }
}

impl fmt::Debug for TimeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimeVector({self})")
    }
}

impl fmt::Display for TimeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (q, b) in self.coords.iter().zip(self.basis.elements()) {
            if q.is_zero() {
                continue;
            }
            match b {
                BasisElement::Rational(r) if r.is_one() => terms.push(format!("{q}")),
                _ if q.is_one() => terms.push(format!("{b}")),
                _ => terms.push(format!("{q}·{b}")),
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Serialize for TimeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TimeVector", 3)?;
        st.serialize_field("expr", &self.to_string())?;
        let coords: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        st.serialize_field("coords", &coords)?;
        st.serialize_field("real_value", &self.real())?;
        st.end()
    }
}

impl Time for TimeVector {
    fn real_value(&self) -> f64 {
        self.real()
    }

    /// Exact order on a shared basis; across bases, compares real values so
    /// that the family can report the mismatch itself.
    fn precedes(&self, other: &Self) -> bool {
        match other.checked_sub(self) {
            Ok(diff) => diff.signum() != Ordering::Less,
            Err(_) => self.real() <= other.real(),
        }
    }

    fn negated(&self) -> Self {
        TimeVector {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> Arc<Basis> {
        Arc::new(Basis::default_pair())
    }

    fn tv(b: &Arc<Basis>, p: (i64, i64), q: (i64, i64)) -> TimeVector {
        TimeVector::new(
            b.clone(),
            vec![TimeVector::ratio(p.0, p.1), TimeVector::ratio(q.0, q.1)],
        )
        .unwrap()
    }

    #[test]
    fn exact_arithmetic() {
        let b = basis();
        let x = tv(&b, (3, 2), (1, 3));
        let y = tv(&b, (1, 2), (-1, 3));
        let s = x.checked_add(&y).unwrap();
        assert_eq!(s, tv(&b, (2, 1), (0, 1)));
        assert!(x.checked_sub(&x).unwrap().is_zero());
        assert_eq!(x.scaled(&TimeVector::ratio(2, 1)), tv(&b, (3, 1), (2, 3)));
        assert!((x.real() - (1.5 + 2f64.sqrt() / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn exact_order_beats_rounding() {
        let b = basis();
        // 22619537 − 15994428·√2 ≈ 2.2e−8, far below f64 resolution of either term
        let d = TimeVector::new(
            b.clone(),
            vec![
                BigRational::from_integer(22619537.into()),
                BigRational::from_integer((-15994428).into()),
            ],
        )
        .unwrap();
        assert_eq!(d.signum(), Ordering::Greater);
        assert_eq!(d.negated().signum(), Ordering::Less);
        let zero = TimeVector::zero(b.clone());
        assert!(zero.precedes(&d));
        assert!(!d.precedes(&zero));
        // 7/5 < √2 < 3/2
        let lo = tv(&b, (7, 5), (0, 1));
        let mid = tv(&b, (0, 1), (1, 1));
        let hi = tv(&b, (3, 2), (0, 1));
        assert!(lo.precedes(&mid) && mid.precedes(&hi) && !hi.precedes(&mid));
    }

    #[test]
    fn basis_mismatch_detected() {
        let b1 = basis();
        let b2 = Arc::new(Basis::new(vec![BasisElement::Rational(BigRational::one()), BasisElement::Sqrt(3)]).unwrap());
        let x = TimeVector::zero(b1);
        let y = TimeVector::zero(b2);
        assert!(matches!(x.checked_add(&y), Err(Error::BasisMismatch(_))));
        assert_ne!(x, y);
    }

    #[test]
    fn dependent_basis_rejected() {
        let dep = Basis::new(vec![BasisElement::Sqrt(2), BasisElement::Sqrt(8)]);
        assert!(dep.is_err());
        let dep = Basis::new(vec![
            BasisElement::Rational(BigRational::one()),
            BasisElement::Rational(TimeVector::ratio(3, 2)),
        ]);
        assert!(dep.is_err());
    }

    #[test]
    fn display_is_readable() {
        let b = basis();
        assert_eq!(tv(&b, (7, 5), (0, 1)).to_string(), "7/5");
        assert_eq!(tv(&b, (0, 1), (1, 1)).to_string(), "sqrt2");
        assert_eq!(tv(&b, (1, 1), (-2, 1)).to_string(), "1 + -2·sqrt2");
        assert_eq!(TimeVector::zero(b).to_string(), "0");
    }
}

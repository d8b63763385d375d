use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Slack allowed on `|λ| ≤ 1` so that `e^{iθ}` built in floating point is accepted.
const UNIMODULAR_SLACK: f64 = 1e-12;

type ValueAndDerivative = dyn Fn(Complex64) -> Result<(Complex64, Complex64)> + Send + Sync;

/// User-supplied holomorphic self-map of the disk.
///
/// The callback returns `(f(z), f'(z))`. The declared bound is a promise that
/// `|f(z)| < bound ≤ 1` on the disk; the library records it but cannot check it.
#[derive(Clone)]
pub struct CustomMap {
    label: String,
    bound: f64,
    func: Arc<ValueAndDerivative>,
}

impl CustomMap {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn declared_bound(&self) -> f64 {
        self.bound
    }
}

impl fmt::Debug for CustomMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMap")
            .field("label", &self.label)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

/// One node of a [`DiskMap`] expression tree.
#[derive(Debug, Clone)]
pub enum MapNode {
    Identity,
    /// `z ↦ e^{iθ} z`
    Rotation(f64),
    /// `z ↦ λ z` with `|λ| ≤ 1`
    Scale(Complex64),
    /// `σ_λ(z) = (z + λ) / (1 + λ̄ z)` with `|λ| < 1`
    Mobius(Complex64),
    /// `outer ∘ inner`
    Compose(DiskMap, DiskMap),
    Custom(CustomMap),
}

/// An immutable holomorphic self-map of the unit disk, stored as an expression
/// tree so that derivatives follow the chain rule exactly.
///
/// Cloning is cheap (the tree is reference counted) and evaluation is pure, so
/// a `DiskMap` can be shared freely between threads.
#[derive(Clone)]
pub struct DiskMap(Arc<MapNode>);

impl DiskMap {
    fn from_node(node: MapNode) -> Self {
        DiskMap(Arc::new(node))
    }

    pub fn identity() -> Self {
        Self::from_node(MapNode::Identity)
    }

    pub fn rotation(theta: f64) -> Self {
        Self::from_node(MapNode::Rotation(theta))
    }

    pub fn scale(lambda: Complex64) -> Result<Self> {
        if !lambda.norm().is_finite() || lambda.norm() > 1.0 + UNIMODULAR_SLACK {
            return Err(domain(format!("scale factor {lambda} must satisfy |λ| ≤ 1")));
        }
        Ok(Self::from_node(MapNode::Scale(lambda)))
    }

    pub fn scale_real(lambda: f64) -> Result<Self> {
        Self::scale(Complex64::new(lambda, 0.0))
    }

    pub fn mobius(lambda: Complex64) -> Result<Self> {
        if !lambda.norm().is_finite() || lambda.norm() >= 1.0 {
            return Err(domain(format!("Möbius parameter {lambda} must satisfy |λ| < 1")));
        }
        Ok(Self::from_node(MapNode::Mobius(lambda)))
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &DiskMap, inner: &DiskMap) -> Self {
        Self::from_node(MapNode::Compose(outer.clone(), inner.clone()))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &DiskMap) -> Self {
        Self::compose(self, inner)
    }

    /// Wraps a value-and-derivative callback. `bound` is the caller's certified
    /// sup of `|f|` on the disk and must lie in `(0, 1]`.
    pub fn custom<F>(label: impl Into<String>, bound: f64, func: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<(Complex64, Complex64)> + Send + Sync + 'static,
    {
        if !(bound > 0.0 && bound <= 1.0) {
            return Err(domain(format!("declared bound {bound} must lie in (0, 1]")));
        }
        Ok(Self::from_node(MapNode::Custom(CustomMap {
            label: label.into(),
            bound,
            func: Arc::new(func),
        })))
    }

    /// `z ↦ c·zⁿ`, a self-map whenever `|c| ≤ 1`.
    pub fn monomial(coeff: Complex64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("monomial degree must be positive"));
        }
        let bound = coeff.norm();
        if bound == 0.0 || bound > 1.0 {
            return Err(domain(format!("monomial coefficient {coeff} must satisfy 0 < |c| ≤ 1")));
        }
        let label = format!("{}·z^{}", fmt_c(coeff), n);
        Self::custom(label, bound, move |z| {
            let zn1 = z.powu(n - 1);
            Ok((coeff * zn1 * z, coeff * f64::from(n) * zn1))
        })
    }

    /// Degree-two Blaschke product `z ↦ z·σ_λ(z)`; not injective on the disk.
    pub fn blaschke2(lambda: Complex64) -> Result<Self> {
        if lambda.norm() >= 1.0 {
            return Err(domain(format!("Blaschke zero {lambda} must lie inside the disk")));
        }
        let label = format!("z·σ[{}]", fmt_c(lambda));
        Self::custom(label, 1.0, move |z| {
            let (m, dm) = mobius_value_deriv(lambda, z);
            Ok((z * m, m + z * dm))
        })
    }

    pub fn node(&self) -> &MapNode {
        &self.0
    }

    /// `map(z)`; requires `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_inside(z)?;
        Ok(self.eval_with_derivative_unchecked(z)?.0)
    }

    /// `map'(z)`, propagated by the chain rule; requires `|z| < 1`.
    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        check_inside(z)?;
        Ok(self.eval_with_derivative_unchecked(z)?.1)
    }

    /// `(map(z), map'(z))` in one pass; requires `|z| < 1`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        check_inside(z)?;
        self.eval_with_derivative_unchecked(z)
    }

    fn eval_with_derivative_unchecked(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        match self.node() {
            MapNode::Identity => Ok((z, Complex64::new(1.0, 0.0))),
            MapNode::Rotation(theta) => {
                let u = Complex64::from_polar(1.0, *theta);
                Ok((u * z, u))
            }
            MapNode::Scale(lambda) => Ok((lambda * z, *lambda)),
            MapNode::Mobius(lambda) => Ok(mobius_value_deriv(*lambda, z)),
            MapNode::Compose(outer, inner) => {
                let (w, dw) = inner.eval_with_derivative_unchecked(z)?;
                let (v, dv) = outer.eval_with_derivative_unchecked(w)?;
                Ok((v, dv * dw))
            }
            MapNode::Custom(custom) => (custom.func)(z),
        }
    }

    /// Number of primitive nodes (composition nodes excluded).
    pub fn primitive_count(&self) -> usize {
        match self.node() {
            MapNode::Compose(outer, inner) => outer.primitive_count() + inner.primitive_count(),
            _ => 1,
        }
    }
}

pub(crate) fn mobius_value_deriv(lambda: Complex64, z: Complex64) -> (Complex64, Complex64) {
    let denom = Complex64::new(1.0, 0.0) + lambda.conj() * z;
    let value = (z + lambda) / denom;
    let deriv = Complex64::new(1.0 - lambda.norm_sqr(), 0.0) / (denom * denom);
    (value, deriv)
}

fn check_inside(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("point {z} is not inside the unit disk")))
    }
}

/// Structural equality of expression trees. Custom nodes are equal only when
/// they share the same callback.
impl PartialEq for DiskMap {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.node(), other.node()) {
            (MapNode::Identity, MapNode::Identity) => true,
            (MapNode::Rotation(a), MapNode::Rotation(b)) => a.to_bits() == b.to_bits(),
            (MapNode::Scale(a), MapNode::Scale(b)) | (MapNode::Mobius(a), MapNode::Mobius(b)) => {
                a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
            }
            (MapNode::Compose(o1, i1), MapNode::Compose(o2, i2)) => o1 == o2 && i1 == i2,
            (MapNode::Custom(a), MapNode::Custom(b)) => Arc::ptr_eq(&a.func, &b.func),
            _ => false,
        }
    }
}

impl fmt::Debug for DiskMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiskMap({self})")
    }
}

impl fmt::Display for DiskMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            MapNode::Identity => write!(f, "id"),
            MapNode::Rotation(theta) => write!(f, "rot({theta})"),
            MapNode::Scale(lambda) => write!(f, "scale({})", fmt_c(*lambda)),
            MapNode::Mobius(lambda) => write!(f, "σ[{}]", fmt_c(*lambda)),
            MapNode::Compose(outer, inner) => write!(f, "({outer} ∘ {inner})"),
            MapNode::Custom(custom) => write!(f, "{}", custom.label),
        }
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

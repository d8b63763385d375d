//! Sharp pointwise estimates for holomorphic self-maps of the unit disk.
//!
//! Every function here takes magnitudes rather than maps, so the constants can
//! be checked in isolation; the audit module pairs them with evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// The open subdisk `{ |z| < r }` with `0 < r ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DiskRegion(f64);

impl DiskRegion {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r <= 1.0 {
            Ok(DiskRegion(r))
        } else {
            Err(domain(format!("disk radius {r} must lie in (0, 1]")))
        }
    }

    pub fn radius(self) -> f64 {
        self.0
    }

    pub fn contains(self, z: Complex64) -> bool {
        z.norm() < self.0
    }
}

impl TryFrom<f64> for DiskRegion {
    type Error = crate::Error;
    fn try_from(r: f64) -> Result<Self> {
        DiskRegion::new(r)
    }
}

impl From<DiskRegion> for f64 {
    fn from(r: DiskRegion) -> f64 {
        r.0
    }
}

fn unit_interval(name: &str, x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("{name} = {x} must lie in [0, 1)")))
    }
}

/// Upper bound for `|ω(z)|` given `|z|` and `|ω(0)|`:
/// `(|z| + |ω(0)|) / (1 + |ω(0)||z|)`.
pub fn schwarz_pick_upper(z_abs: f64, w0_abs: f64) -> Result<f64> {
    unit_interval("|z|", z_abs)?;
    unit_interval("|ω(0)|", w0_abs)?;
    Ok(mobius_sum(z_abs, w0_abs))
}

/// Upper bound for `|ω(0)|` given `|z|` and `|ω(z)|`. Same closed form as
/// [`schwarz_pick_upper`] with the roles of the arguments swapped.
pub fn center_bound(z_abs: f64, wz_abs: f64) -> Result<f64> {
    unit_interval("|z|", z_abs)?;
    unit_interval("|ω(z)|", wz_abs)?;
    Ok(mobius_sum(z_abs, wz_abs))
}

/// Growth bound for an origin-fixing map with `|ω'(0)| = lambda_abs`:
/// `|z| (|z| + |λ|) / (1 + |λ||z|)`.
pub fn fixed_origin_growth(z_abs: f64, lambda_abs: f64) -> Result<f64> {
    unit_interval("|z|", z_abs)?;
    if !(0.0..=1.0).contains(&lambda_abs) {
        return Err(domain(format!("|λ| = {lambda_abs} must lie in [0, 1]")));
    }
    Ok(z_abs * (z_abs + lambda_abs) / (1.0 + lambda_abs * z_abs))
}

/// Distance-from-identity bound for an origin-fixing map with `ω'(0) = λ`:
/// `|z| (1 + |z|) |1 − λ| / (1 − |λ||z|)`.
pub fn identity_deviation(z_abs: f64, lambda: Complex64) -> Result<f64> {
    unit_interval("|z|", z_abs)?;
    let lambda_abs = lambda.norm();
    if lambda_abs > 1.0 {
        return Err(domain(format!("|λ| = {lambda_abs} must be at most 1")));
    }
    if lambda_abs * z_abs >= 1.0 {
        return Err(domain("|λ|·|z| must be below 1"));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(z_abs * (1.0 + z_abs) * (one - lambda).norm() / (1.0 - lambda_abs * z_abs))
}

/// Landau radius `ρ(σ) = σ / (1 + √(1 − σ²))`: an origin-fixing self-map with
/// `|ω'(0)| = σ` is univalent on `𝔻(ρ(σ))`.
pub fn landau_radius(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(domain(format!("σ = {sigma} must lie in (0, 1]")));
    }
    // rounding can push 1 − σ² slightly negative near σ = 1
    let radicand = (1.0 - sigma * sigma).max(0.0);
    Ok(sigma / (1.0 + radicand.sqrt()))
}

/// Inverse of [`landau_radius`]: the `σ` with `ρ(σ) = r`, namely `2r / (1 + r²)`.
pub fn landau_sigma_for_radius(r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(domain(format!("radius {r} must lie in (0, 1]")));
    }
    Ok(2.0 * r / (1.0 + r * r))
}

/// `2|z₁ − z₀| / (1 − r²)`, a Lipschitz bound for any self-map on the closed
/// disk of radius `r`.
pub fn lipschitz_bound(z0: Complex64, z1: Complex64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("radius {r} must lie in [0, 1)")));
    }
    if z0.norm() > r || z1.norm() > r {
        return Err(domain(format!(
            "points {z0}, {z1} must lie in the closed disk of radius {r}"
        )));
    }
    Ok(2.0 * (z1 - z0).norm() / (1.0 - r * r))
}

/// `(e₁ + e₂) / (1 + e₁e₂)`: the pseudo-hyperbolic sum used to chain
/// `|ω(0)|` estimates along a subdivision.
pub fn hyperbolic_sum(e1: f64, e2: f64) -> Result<f64> {
    unit_interval("e1", e1)?;
    unit_interval("e2", e2)?;
    Ok(mobius_sum(e1, e2))
}

/// Folds [`hyperbolic_sum`] `k` times starting from 0, returning every partial
/// value `ε₁, …, ε_k`.
pub fn hyperbolic_sum_iterates(e: f64, k: usize) -> Result<Vec<f64>> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        acc = hyperbolic_sum(e, acc)?;
        out.push(acc);
    }
    Ok(out)
}

fn mobius_sum(x: f64, y: f64) -> f64 {
    (x + y) / (1.0 + x * y)
}

/// Named scalar bounds evaluated at one point, all finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLedger {
    pub growth: f64,
    pub deviation: f64,
    pub lipschitz: f64,
    pub landau_radius: f64,
}

impl BoundLedger {
    pub fn new(growth: f64, deviation: f64, lipschitz: f64, landau_radius: f64) -> Result<Self> {
        for (name, v) in [("growth", growth), ("deviation", deviation), ("lipschitz", lipschitz)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(domain(format!("{name} bound {v} must be finite and nonnegative")));
            }
        }
        if !(landau_radius > 0.0 && landau_radius <= 1.0) {
            return Err(domain(format!("landau radius {landau_radius} must lie in (0, 1]")));
        }
        Ok(BoundLedger {
            growth,
            deviation,
            lipschitz,
            landau_radius,
        })
    }

    /// Bounds for an origin-fixing map with `ω'(0) = lambda` at `z`, with
    /// `z_other` as the second point of the Lipschitz term.
    pub fn for_origin_fixing(z: Complex64, z_other: Complex64, lambda: Complex64) -> Result<Self> {
        let r = z.norm().max(z_other.norm());
        let sigma = lambda.norm().min(1.0);
        let landau = if sigma > 0.0 {
            landau_radius(sigma)?
        } else {
            f64::MIN_POSITIVE
        };
        Self::new(
            fixed_origin_growth(z.norm(), sigma)?,
            identity_deviation(z.norm(), lambda)?,
            lipschitz_bound(z, z_other, r)?,
            landau,
        )
    }
}

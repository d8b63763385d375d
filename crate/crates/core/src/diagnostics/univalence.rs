use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diskmap::sample::halton_disk_points;
use crate::diskmap::{landau_radius, landau_sigma_for_radius, schwarz_pick_upper, DiskMap, DiskRegion};
use crate::error::{domain, Error, Result};
use crate::evolution::{conjugate_to_fix_origin, invert_univalent, EvolutionFamily, NewtonSettings};

/// Knobs for [`univalence_certificate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateOptions {
    /// Below this `|α|` the derivative is considered to have vanished.
    pub alpha_floor: f64,
    pub max_steps: usize,
    /// Bisection iterations per step.
    pub bisection_iterations: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            alpha_floor: 1e-12,
            max_steps: 10_000,
            bisection_iterations: 60,
        }
    }
}

/// A subdivision `s₀ = τ₀ < … < τₙ = t₀` such that each conjugated step map
/// `ω̃_{τ_{k−1},τ_k}` fixes the origin with `|ω̃'(0)| > σ`, hence (Landau) is
/// univalent on `𝔻(ρ(σ))`, and `ρ(σ)` exceeds the conjugated target radius.
/// The composition `ω_{s₀,t₀}` is then univalent on `𝔻(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceCertificate {
    pub s0: f64,
    pub t0: f64,
    /// Target radius in the original coordinates.
    pub r: f64,
    pub base_point: Complex64,
    /// Radius of a disk containing `σ_{−c(s₀)}(𝔻(r))`.
    pub conjugated_radius: f64,
    /// Smallest admissible derivative ratio, `ρ⁻¹(conjugated_radius)`.
    pub sigma_min: f64,
    pub sigma: f64,
    pub landau_radius: f64,
    pub subdivision: Vec<f64>,
    /// `|α(τ_k) / α(τ_{k−1})|` for `k = 1..=n`, with `α(τ) = ω̃'_{a,τ}(0)`.
    pub ratios: Vec<f64>,
}

impl UnivalenceCertificate {
    pub fn steps(&self) -> usize {
        self.ratios.len()
    }

    /// Re-checks the certificate's internal invariants.
    pub fn is_consistent(&self) -> bool {
        self.ratios.iter().all(|&q| q > self.sigma)
            && self.landau_radius > self.conjugated_radius
            && self.subdivision.windows(2).all(|w| w[0] < w[1])
            && self.subdivision.first() == Some(&self.s0)
            && self.subdivision.last() == Some(&self.t0)
    }
}

/// Certifies that `ω_{s₀,t₀}` is univalent on `𝔻(r)`.
///
/// The family is conjugated to fix the origin along the orbit of `z₀`; then
/// `σ = (σ_min + 1)/2` with `ρ(σ_min)` equal to the conjugated radius, and the
/// subdivision is extended greedily (bisection on the derivative ratio) as far
/// as `|α(τ_{k+1})/α(τ_k)| > σ` allows.
///
/// Fails with [`Error::CertificationFailure`] if `α` vanishes, a step cannot
/// advance, or more than `max_steps` steps are needed.
pub fn univalence_certificate(
    family: &EvolutionFamily,
    s0: f64,
    t0: f64,
    r: DiskRegion,
    z0: Complex64,
    options: CertificateOptions,
) -> Result<UnivalenceCertificate> {
    let (a, b) = (*family.start(), *family.end());
    if !(a <= s0 && s0 < t0 && t0 <= b) {
        return Err(domain(format!(
            "certificate needs a ≤ s0 < t0 ≤ b, got ({s0}, {t0}) on [{a}, {b}]"
        )));
    }
    if r.radius() >= 1.0 {
        return Err(domain("certificate radius must be below 1"));
    }
    let (conj, trajectory) = conjugate_to_fix_origin(family, z0)?;
    let c_s0 = trajectory.at(&s0)?;
    let conjugated_radius = schwarz_pick_upper(r.radius(), c_s0.norm())?;
    let sigma_min = landau_sigma_for_radius(conjugated_radius)?;
    let sigma = 0.5 * (sigma_min + 1.0);
    let rho = landau_radius(sigma)?;

    let origin = Complex64::new(0.0, 0.0);
    let alpha = |tau: f64| -> Result<Complex64> {
        let value = conj.at(&a, &tau)?.deriv(origin)?;
        if value.norm() < options.alpha_floor {
            return Err(Error::CertificationFailure(format!(
                "α({tau}) = {value} vanished numerically"
            )));
        }
        Ok(value)
    };

    let mut subdivision = vec![s0];
    let mut ratios = Vec::new();
    let mut tau = s0;
    let mut alpha_tau = alpha(tau)?;
    while tau < t0 {
        if ratios.len() >= options.max_steps {
            return Err(Error::CertificationFailure(format!(
                "more than {} steps needed",
                options.max_steps
            )));
        }
        let ratio_at = |x: f64| -> Result<f64> { Ok((alpha(x)? / alpha_tau).norm()) };
        let end_ratio = ratio_at(t0)?;
        let (next, ratio) = if end_ratio > sigma {
            (t0, end_ratio)
        } else {
            let (mut lo, mut hi) = (tau, t0);
            let mut lo_ratio = 1.0;
            for _ in 0..options.bisection_iterations {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let q = ratio_at(mid)?;
                if q > sigma {
                    lo = mid;
                    lo_ratio = q;
                } else {
                    hi = mid;
                }
            }
            (lo, lo_ratio)
        };
        if next <= tau {
            return Err(Error::CertificationFailure(format!(
                "subdivision cannot advance past {tau}; α may be discontinuous there"
            )));
        }
        subdivision.push(next);
        ratios.push(ratio);
        alpha_tau = alpha(next)?;
        tau = next;
    }

    Ok(UnivalenceCertificate {
        s0,
        t0,
        r: r.radius(),
        base_point: z0,
        conjugated_radius,
        sigma_min,
        sigma,
        landau_radius: rho,
        subdivision,
        ratios,
    })
}

/// Outcome of [`univalence_sample_test`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTest {
    pub passed: bool,
    pub radius: f64,
    pub pairs_checked: usize,
    pub seed: u64,
    /// Two distinct points with (numerically) equal images.
    pub witness: Option<(Complex64, Complex64)>,
}

const SAME_IMAGE: f64 = 1e-10;
const DISTINCT_POINTS: f64 = 1e-6;

/// Searches `𝔻(r)` for a failure of injectivity.
///
/// Each of `n` quasi-random points `z` is paired with the next point, with its
/// rotations by `e^{2πi/m}` for `m = 2, 3, 4`, and with the preimage of `f(z)`
/// found by Newton's method started at `−z`. A pair fails when
/// `|f(z₁) − f(z₂)| < 10⁻¹⁰` while `|z₁ − z₂| > 10⁻⁶`.
pub fn univalence_sample_test(map: &DiskMap, r: DiskRegion, n: usize, seed: u64) -> Result<SampleTest> {
    if r.radius() >= 1.0 {
        return Err(domain("sample radius must be below 1"));
    }
    let points = halton_disk_points(n, r.radius(), seed);
    let settings = NewtonSettings {
        tolerance: 1e-13,
        max_iterations: 50,
        fallback_grid: 1,
    };
    let mut checked = 0;
    let fails = |z1: Complex64, w1: Complex64, z2: Complex64| -> Result<bool> {
        Ok((z1 - z2).norm() > DISTINCT_POINTS && (w1 - map.eval(z2)?).norm() < SAME_IMAGE)
    };
    for (k, &z) in points.iter().enumerate() {
        let w = map.eval(z)?;
        let mut partners = Vec::with_capacity(5);
        if n > 1 {
            partners.push(points[(k + 1) % n]);
        }
        for m in 2..=4 {
            partners.push(z * Complex64::from_polar(1.0, TAU / m as f64));
        }
        if let Ok(inv) = invert_univalent(map, w, -z, &settings) {
            if r.contains(inv.point) {
                partners.push(inv.point);
            }
        }
        for z2 in partners {
            checked += 1;
            if fails(z, w, z2)? {
                return Ok(SampleTest {
                    passed: false,
                    radius: r.radius(),
                    pairs_checked: checked,
                    seed,
                    witness: Some((z, z2)),
                });
            }
        }
    }
    Ok(SampleTest {
        passed: true,
        radius: r.radius(),
        pairs_checked: checked,
        seed,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::make_radial;

    fn region(r: f64) -> DiskRegion {
        DiskRegion::new(r).unwrap()
    }

    #[test]
    fn short_radial_needs_one_step() {
        let fam = make_radial(0.0, 0.1).unwrap();
        let cert = univalence_certificate(
            &fam,
            0.0,
            0.1,
            region(0.5),
            Complex64::new(0.0, 0.0),
            CertificateOptions::default(),
        )
        .unwrap();
        assert!((cert.sigma_min - 0.8).abs() < 1e-15);
        assert!((cert.sigma - 0.9).abs() < 1e-15);
        assert_eq!(cert.steps(), 1);
        assert!((cert.ratios[0] - (-0.1f64).exp()).abs() < 1e-15);
        assert!(cert.is_consistent());
    }

    #[test]
    fn unit_radial_step_count_matches_log_oracle() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let cert = univalence_certificate(
            &fam,
            0.0,
            1.0,
            region(0.5),
            Complex64::new(0.0, 0.0),
            CertificateOptions::default(),
        )
        .unwrap();
        // ratios are e^{−Δ}, so the greedy step is just under ln(1/σ)
        let expected = (1.0 / (1.0 / cert.sigma).ln()).ceil() as usize;
        assert_eq!(cert.steps(), expected);
        assert!(cert.is_consistent());
    }

    #[test]
    fn rejects_empty_interval() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let err = univalence_certificate(
            &fam,
            0.5,
            0.5,
            region(0.5),
            Complex64::new(0.0, 0.0),
            CertificateOptions::default(),
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn vanishing_derivative_fails() {
        let fam = EvolutionFamily::new("collapse", 0.0, 1.0, |s: &f64, t: &f64| {
            DiskMap::scale_real(if s == t { 1.0 } else { 1e-14 })
        })
        .unwrap();
        let err = univalence_certificate(
            &fam,
            0.0,
            1.0,
            region(0.5),
            Complex64::new(0.0, 0.0),
            CertificateOptions::default(),
        );
        assert!(matches!(err, Err(Error::CertificationFailure(_))));
    }

    #[test]
    fn step_cap_is_enforced() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let opts = CertificateOptions {
            max_steps: 3,
            ..CertificateOptions::default()
        };
        let err = univalence_certificate(&fam, 0.0, 1.0, region(0.5), Complex64::new(0.0, 0.0), opts);
        assert!(matches!(err, Err(Error::CertificationFailure(_))));
    }

    #[test]
    fn automorphisms_pass_sample_test() {
        let m = DiskMap::mobius(Complex64::new(0.4, 0.3)).unwrap();
        for r in [0.3, 0.6, 0.95] {
            assert!(univalence_sample_test(&m, region(r), 256, 0).unwrap().passed);
        }
    }

    #[test]
    fn even_map_fails_with_antipodal_witness() {
        let sq = DiskMap::monomial(Complex64::new(0.9, 0.0), 2).unwrap();
        let t = univalence_sample_test(&sq, region(0.5), 512, 0).unwrap();
        assert!(!t.passed);
        let (z1, z2) = t.witness.unwrap();
        assert!((z1 + z2).norm() < 1e-15);
    }

    #[test]
    fn blaschke_product_is_caught_by_newton_search() {
        // z·σ_λ has two preimages for generic values; its critical point sits
        // inside the disk of radius 0.9 for λ = 0.5
        let b = DiskMap::blaschke2(Complex64::new(0.5, 0.0)).unwrap();
        assert!(!univalence_sample_test(&b, region(0.9), 256, 3).unwrap().passed);
    }

    #[test]
    fn radial_transitions_pass() {
        let fam = make_radial(0.0, 1.0).unwrap();
        let map = fam.at(&0.0, &1.0).unwrap();
        assert!(univalence_sample_test(&map, region(0.5), 512, 1).unwrap().passed);
    }
}

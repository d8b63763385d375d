use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use super::{EvolutionFamily, Time};
use crate::diskmap::DiskMap;
use crate::error::{Error, Result};

/// Parameters of the damped Newton solver used to invert univalent maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    /// Stop once `|f(w) − target| < tolerance`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Resolution of the polar grid searched for a fresh start on failure.
    pub fallback_grid: usize,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        NewtonSettings {
            tolerance: 1e-12,
            max_iterations: 100,
            fallback_grid: 32,
        }
    }
}

/// A solved preimage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub point: Complex64,
    pub derivative: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

fn newton(
    map: &DiskMap,
    target: Complex64,
    start: Complex64,
    settings: &NewtonSettings,
) -> Result<std::result::Result<Inversion, (usize, f64)>> {
    let mut w = start;
    let (mut fw, mut dfw) = map.eval_with_derivative(w)?;
    let mut residual = (fw - target).norm();
    let mut damping = 1.0;
    let mut iterations = 0;
    while residual >= settings.tolerance {
        if iterations == settings.max_iterations || dfw.norm() == 0.0 {
            return Ok(Err((iterations, residual)));
        }
        iterations += 1;
        let step = (fw - target) / dfw;
        let mut accepted = false;
        while damping > 1e-16 {
            let candidate = w - step * damping;
            if candidate.norm() < 1.0 {
                let (fc, dfc) = map.eval_with_derivative(candidate)?;
                let r = (fc - target).norm();
                if r < residual {
                    w = candidate;
                    fw = fc;
                    dfw = dfc;
                    residual = r;
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !accepted {
            return Ok(Err((iterations, residual)));
        }
        damping = (damping * 2.0).min(1.0);
    }
    Ok(Ok(Inversion {
        point: w,
        derivative: dfw,
        residual,
        iterations,
    }))
}

/// Solves `map(w) = target` for `w` in the disk, starting from `guess`.
///
/// Damped Newton: the step is halved whenever it would increase the residual or
/// leave the disk. If that fails, the best point of a polar grid is used as a
/// second starting point before giving up with [`Error::InversionFailure`].
pub fn invert_univalent(
    map: &DiskMap,
    target: Complex64,
    guess: Complex64,
    settings: &NewtonSettings,
) -> Result<Inversion> {
    let first = match newton(map, target, guess, settings)? {
        Ok(inv) => return range_checked(inv, settings),
        Err(failure) => failure,
    };

    let n = settings.fallback_grid.max(1);
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for i in 0..n {
        let r = (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let w = Complex64::from_polar(r, TAU * j as f64 / n as f64);
            let res = (map.eval(w)? - target).norm();
            if res < best.0 {
                best = (res, w);
            }
        }
    }
    match newton(map, target, best.1, settings)? {
        Ok(mut inv) => {
            inv.iterations += first.0;
            range_checked(inv, settings)
        }
        Err((iterations, residual)) => Err(Error::InversionFailure {
            iterations: first.0 + iterations,
            residual: residual.min(first.1),
        }),
    }
}

fn range_checked(inv: Inversion, settings: &NewtonSettings) -> Result<Inversion> {
    let m = inv.point.norm();
    if m > 1.0 + settings.tolerance {
        return Err(Error::Range {
            point: inv.point.to_string(),
            modulus: m,
        });
    }
    Ok(inv)
}

/// Builds `ω_{s,t} = f_t⁻¹ ∘ f_s` from a Loewner chain of univalent maps.
///
/// Each transition is a custom map that evaluates `f_s(z)` and inverts `f_t`
/// numerically from the initial guess `w₀ = z`. The chain is trusted to be
/// univalent with increasing ranges; only solved points are range checked.
/// `s = t` short-circuits to the identity without any solve.
pub fn from_loewner_chain<T, F>(start: T, end: T, chain: F, inversion_tol: f64) -> Result<EvolutionFamily<T>>
where
    T: Time,
    F: Fn(&T) -> Result<DiskMap> + Send + Sync + 'static,
{
    let chain = Arc::new(chain);
    let settings = NewtonSettings {
        tolerance: inversion_tol,
        ..NewtonSettings::default()
    };
    EvolutionFamily::new("loewner", start, end, move |s, t| {
        if s == t {
            return Ok(DiskMap::identity());
        }
        let f_s = chain(s)?;
        let f_t = chain(t)?;
        let label = format!("f[{t}]⁻¹ ∘ f[{s}]");
        DiskMap::custom(label, 1.0, move |z| {
            let (target, d_target) = f_s.eval_with_derivative(z)?;
            let inv = invert_univalent(&f_t, target, z, &settings)?;
            Ok((inv.point, d_target / inv.derivative))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{linspace, make_radial};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverts_mobius() {
        let lambda = c(0.3, -0.5);
        let f = DiskMap::mobius(lambda).unwrap();
        let target = c(0.1, 0.2);
        let inv = invert_univalent(&f, target, c(0.0, 0.0), &NewtonSettings::default()).unwrap();
        let exact = DiskMap::mobius(-lambda).unwrap().eval(target).unwrap();
        assert!((inv.point - exact).norm() < 1e-12);
    }

    #[test]
    fn fallback_grid_rescues_bad_guess() {
        let f = DiskMap::mobius(c(0.9, 0.0)).unwrap();
        let target = c(-0.5, 0.0);
        let inv = invert_univalent(&f, target, c(0.0, 0.99), &NewtonSettings::default()).unwrap();
        assert!((f.eval(inv.point).unwrap() - target).norm() < 1e-12);
    }

    #[test]
    fn unreachable_target_fails() {
        // |0.5 z| < 0.5, so 0.8 has no preimage in the disk
        let f = DiskMap::scale_real(0.5).unwrap();
        let err = invert_univalent(&f, c(0.8, 0.0), c(0.0, 0.0), &NewtonSettings::default()).unwrap_err();
        assert!(matches!(err, Error::InversionFailure { .. }));
    }

    #[test]
    fn diagonal_is_syntactic_identity() {
        let fam = from_loewner_chain(0.0, 1.0, |t: &f64| DiskMap::scale_real((-(1.0 - t)).exp()), 1e-12).unwrap();
        assert_eq!(fam.at(&0.4, &0.4).unwrap(), DiskMap::identity());
    }

    #[test]
    fn radial_chain_recovers_radial_family() {
        let fam = from_loewner_chain(0.0, 1.0, |t: &f64| DiskMap::scale_real((-(1.0 - t)).exp()), 1e-12).unwrap();
        let radial = make_radial(0.0, 1.0).unwrap();
        let ts = linspace(0.0, 1.0, 6);
        for (i, s) in ts.iter().enumerate() {
            for t in ts.iter().skip(i) {
                for k in 0..16 {
                    let z = Complex64::from_polar(0.9, k as f64 * 0.4);
                    // closed-form inverse: f_t⁻¹(w) = e^{1−t} w
                    let oracle = (1.0 - t).exp() * ((-(1.0 - s)).exp() * z);
                    let w = fam.eval(s, t, z).unwrap();
                    assert!((w - oracle).norm() < 1e-10);
                    assert!((w - radial.eval(s, t, z).unwrap()).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn derivative_uses_inverse_function_rule() {
        let fam = from_loewner_chain(0.0, 1.0, |t: &f64| DiskMap::scale_real((-(1.0 - t)).exp()), 1e-12).unwrap();
        let d = fam.at(&0.0, &1.0).unwrap().deriv(c(0.3, 0.0)).unwrap();
        assert!((d.re - (-1.0f64).exp()).abs() < 1e-12);
    }
}

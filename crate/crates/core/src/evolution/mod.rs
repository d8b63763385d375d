//! Evolution families `ω_{s,t}` of self-maps of the disk and the constructions
//! that build new families from old ones.
//!
//! A family is a lazily evaluated rule `(s, t) ↦ DiskMap` on an interval
//! `[a, b]`; nothing is tabulated, so diagnostics can probe any grid they like.
//! Families are generic over the time type so that exact lattice times (see
//! [`crate::hamel`]) share the same machinery as ordinary `f64` times.

mod conjugate;
mod glue;
mod loewner;
mod reverse;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::diskmap::DiskMap;
use crate::error::{domain, Result};

pub use conjugate::{conjugate_by, conjugate_to_fix_origin, make_mobius_conjugated, Trajectory};
pub use glue::glue;
pub use loewner::{from_loewner_chain, invert_univalent, Inversion, NewtonSettings};
pub use reverse::{reverse_dual, ReverseFamily};

/// A time parameter.
pub trait Time: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Real value used for reporting, gap widths and ordering.
    fn real_value(&self) -> f64;

    /// `self ≤ other`.
    fn precedes(&self, other: &Self) -> bool;

    /// `−self`.
    fn negated(&self) -> Self;
}

impl Time for f64 {
    fn real_value(&self) -> f64 {
        *self
    }

    fn precedes(&self, other: &Self) -> bool {
        self <= other
    }

    fn negated(&self) -> Self {
        0.0 - self
    }
}

type Rule<T> = dyn Fn(&T, &T) -> Result<DiskMap> + Send + Sync;

/// A two-parameter family `{ω_{s,t}}` on `[a, b]`, expected to satisfy
///
/// * EF1: each `ω_{s,t}` is non-constant,
/// * EF2: `ω_{t,t} = id`,
/// * EF3: `ω_{u,t} ∘ ω_{s,u} = ω_{s,t}` for `s ≤ u ≤ t`.
///
/// The axioms are properties of the rule and are audited by
/// [`crate::diagnostics`], not enforced at construction.
#[derive(Clone)]
pub struct EvolutionFamily<T: Time = f64> {
    start: T,
    end: T,
    label: String,
    rule: Arc<Rule<T>>,
}

impl<T: Time> EvolutionFamily<T> {
    pub fn new<F>(label: impl Into<String>, start: T, end: T, rule: F) -> Result<Self>
    where
        F: Fn(&T, &T) -> Result<DiskMap> + Send + Sync + 'static,
    {
        if start == end || !start.precedes(&end) {
            return Err(domain(format!("interval [{start}, {end}] must satisfy a < b")));
        }
        Ok(EvolutionFamily {
            start,
            end,
            label: label.into(),
            rule: Arc::new(rule),
        })
    }

    pub fn start(&self) -> &T {
        &self.start
    }

    pub fn end(&self) -> &T {
        &self.end
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn contains(&self, t: &T) -> bool {
        self.start.precedes(t) && t.precedes(&self.end)
    }

    /// The transition map `ω_{s,t}`; requires `a ≤ s ≤ t ≤ b`.
    pub fn at(&self, s: &T, t: &T) -> Result<DiskMap> {
        if !(self.start.precedes(s) && s.precedes(t) && t.precedes(&self.end)) {
            return Err(domain(format!(
                "({s}, {t}) is not admissible on [{}, {}]",
                self.start, self.end
            )));
        }
        (self.rule)(s, t)
    }

    /// `ω_{s,t}(z)`.
    pub fn eval(&self, s: &T, t: &T, z: Complex64) -> Result<Complex64> {
        self.at(s, t)?.eval(z)
    }

    /// The Loewner chain `f_t = ω_{t,b}` read off the family.
    pub fn loewner_chain(&self, t: &T) -> Result<DiskMap> {
        self.at(t, &self.end)
    }
}

impl<T: Time> fmt::Debug for EvolutionFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvolutionFamily")
            .field("label", &self.label)
            .field("start", &self.start)
            .field("end", &self.end)
            .finish_non_exhaustive()
    }
}

/// `n` points from `a` to `b` inclusive; the endpoints are hit exactly.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `ω_{s,t}(z) = e^{−(t−s)} z`. Fixes the origin and satisfies EF1–EF3 exactly
/// up to rounding in `exp`.
pub fn make_radial(a: f64, b: f64) -> Result<EvolutionFamily> {
    EvolutionFamily::new("radial", a, b, |s, t| DiskMap::scale_real((-(t - s)).exp()))
}

/// `ω_{s,t}(z) = e^{i(φ(t) − φ(s))} z` for a phase function `φ`. Jointly
/// continuous exactly when `φ` is continuous.
pub fn make_rotation<P>(a: f64, b: f64, phase: P) -> Result<EvolutionFamily>
where
    P: Fn(f64) -> f64 + Send + Sync + 'static,
{
    EvolutionFamily::new("rotation", a, b, move |s, t| {
        Ok(DiskMap::rotation(phase(*t) - phase(*s)))
    })
}

/// `ω_{s,t}(z) = e^{−(t−s)²} z`, which satisfies EF1 and EF2 but violates EF3.
/// Used to check that the semigroup residual actually detects failures.
pub fn make_corrupted(a: f64, b: f64) -> Result<EvolutionFamily> {
    EvolutionFamily::new("corrupted-demo", a, b, |s, t| {
        let d = t - s;
        DiskMap::scale_real((-d * d).exp())
    })
}

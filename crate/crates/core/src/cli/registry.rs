use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;

use crate::diskmap::DiskMap;
use crate::error::{Error, Result};
use crate::evolution::{
    from_loewner_chain, glue, make_corrupted, make_mobius_conjugated, make_radial, make_rotation, EvolutionFamily,
    Trajectory,
};
use crate::hamel::HamelConfig;

/// Registry names of the built-in families that are jointly continuous.
pub const CONTINUOUS_BUILTINS: [&str; 9] = [
    "radial",
    "rotation:const",
    "rotation:t",
    "rotation:t^2",
    "rotation:sin",
    "glued:radial+rotation:t",
    "mobius-conjugated:radial",
    "loewner:radial",
    "loewner:mobius",
];

/// Registry names of families with a parameter discontinuity.
pub const DISCONTINUOUS_BUILTINS: [&str; 2] = ["rotation:step", "hamel"];

/// Help text listing every registry name.
pub const REGISTRY_HELP: &str = "radial | rotation[:const|t|t^2|sin|step] | glued:<A>+<B> | \
mobius-conjugated[:<A>] | loewner[:radial|mobius] | hamel[:<spec.toml>] | corrupted-demo";

/// Parameter of the Möbius Loewner chain.
const LOEWNER_MOBIUS_LAMBDA: Complex64 = Complex64::new(0.3, 0.2);

/// A family built from a registry name.
#[derive(Debug, Clone)]
pub enum Registered {
    Real {
        family: EvolutionFamily,
        /// Families solved by Newton inversion get a looser EF3 tolerance.
        numerical: bool,
    },
    Hamel(Box<HamelConfig>),
}

impl Registered {
    pub fn label(&self) -> String {
        match self {
            Registered::Real { family, .. } => family.label().to_string(),
            Registered::Hamel(_) => "hamel".to_string(),
        }
    }
}

fn unknown(name: &str) -> Error {
    Error::Config(format!("unknown family `{name}`; expected one of {REGISTRY_HELP}"))
}

fn rotation(name: &str, a: f64, b: f64) -> Result<EvolutionFamily> {
    let kind = name.strip_prefix("rotation").unwrap_or("");
    let kind = kind
        .strip_prefix(':')
        .unwrap_or(if kind.is_empty() { "t" } else { kind });
    let mid = 0.5 * (a + b);
    let fam = match kind {
        "const" => make_rotation(a, b, |_| 1.0)?,
        "t" => make_rotation(a, b, |t| t)?,
        "t^2" => make_rotation(a, b, |t| t * t)?,
        "sin" => make_rotation(a, b, |t| (TAU * t).sin())?,
        "step" => make_rotation(a, b, move |t| if t < mid { 0.0 } else { 2.0 })?,
        _ => return Err(unknown(name)),
    };
    Ok(fam.with_label(format!("rotation:{kind}")))
}

fn loewner(name: &str, a: f64, b: f64) -> Result<EvolutionFamily> {
    let kind = name.strip_prefix("loewner").unwrap_or("");
    let kind = kind
        .strip_prefix(':')
        .unwrap_or(if kind.is_empty() { "radial" } else { kind });
    let fam = match kind {
        // f_t(z) = e^{t−b} z
        "radial" => from_loewner_chain(a, b, move |t: &f64| DiskMap::scale_real((t - b).exp()), 1e-12)?,
        // f_t(z) = e^{t−b} σ_λ(z)
        "mobius" => {
            let sigma = DiskMap::mobius(LOEWNER_MOBIUS_LAMBDA)?;
            from_loewner_chain(
                a,
                b,
                move |t: &f64| Ok(DiskMap::scale_real((t - b).exp())?.after(&sigma)),
                1e-12,
            )?
        }
        _ => return Err(unknown(name)),
    };
    Ok(fam.with_label(format!("loewner:{kind}")))
}

/// The closed form of `loewner:mobius`: `σ_{−λ}(e^{s−t} σ_λ(z))`.
pub fn loewner_mobius_closed_form(a: f64, b: f64) -> Result<EvolutionFamily> {
    let sigma = DiskMap::mobius(LOEWNER_MOBIUS_LAMBDA)?;
    let inverse = DiskMap::mobius(-LOEWNER_MOBIUS_LAMBDA)?;
    EvolutionFamily::new("mobius-radial", a, b, move |s: &f64, t: &f64| {
        Ok(inverse.after(&DiskMap::scale_real((s - t).exp())?).after(&sigma))
    })
}

/// Builds a registered real-time family on `[a, b]`.
pub fn build_real(name: &str, a: f64, b: f64) -> Result<EvolutionFamily> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Config(format!("interval [{a}, {b}] must satisfy a < b")));
    }
    let name = name.trim();
    if name == "radial" {
        return make_radial(a, b);
    }
    if name == "corrupted-demo" {
        return make_corrupted(a, b);
    }
    if name.starts_with("rotation") {
        return rotation(name, a, b);
    }
    if name.starts_with("loewner") {
        return loewner(name, a, b);
    }
    if let Some(rest) = name.strip_prefix("glued:") {
        let (first, second) = rest.split_once('+').ok_or_else(|| unknown(name))?;
        let mid = 0.5 * (a + b);
        let fam = glue(&build_real(first, a, mid)?, &build_real(second, mid, b)?)?;
        return Ok(fam);
    }
    if let Some(rest) = name.strip_prefix("mobius-conjugated") {
        let base = rest
            .strip_prefix(':')
            .unwrap_or(if rest.is_empty() { "radial" } else { rest });
        let curve = Trajectory::new(move |t: &f64| Ok(Complex64::from_polar(0.5, t - a)));
        return make_mobius_conjugated(&build_real(base, a, b)?, curve);
    }
    Err(unknown(name))
}

/// Resolves any registry name, including `hamel[:path]`.
pub fn build(name: &str, a: f64, b: f64) -> Result<Registered> {
    let name = name.trim();
    if name == "hamel" {
        return Ok(Registered::Hamel(Box::new(HamelConfig::default_spec())));
    }
    if let Some(path) = name.strip_prefix("hamel:") {
        return Ok(Registered::Hamel(Box::new(HamelConfig::from_path(Path::new(path))?)));
    }
    let family = build_real(name, a, b)?;
    Ok(Registered::Real {
        numerical: name.contains("loewner"),
        family,
    })
}

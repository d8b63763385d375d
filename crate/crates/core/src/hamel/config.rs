use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use super::{hamel_family, AdditiveSpec, Basis, BasisElement, TimeVector};
use crate::error::{Error, Result};
use crate::evolution::EvolutionFamily;

/// The default counterexample: `f(1) = π`, `f(√2) = 0` on `[0, 2]`.
pub const DEFAULT_SPEC_TOML: &str = r#"basis = ["1", "sqrt2"]
images = ["pi", 0.0]
start = ["0", "0"]
end = ["2", "0"]
radius = 0.5
"#;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Token {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    basis: Vec<Token>,
    images: Vec<Token>,
    start: Option<Vec<Token>>,
    end: Option<Vec<Token>>,
    radius: Option<f64>,
}

/// A parsed Hamel spec file.
#[derive(Debug, Clone)]
pub struct HamelConfig {
    pub spec: AdditiveSpec,
    pub start: TimeVector,
    pub end: TimeVector,
    /// Radius at which witness distances are measured.
    pub radius: f64,
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| config_error(format!("`{text}` is not a rational number")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == BigInt::from(0) {
                return Err(config_error(format!("`{text}` has a zero denominator")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => match parse_int(text) {
            Ok(p) => Ok(BigRational::from_integer(p)),
            Err(e) => text.parse::<f64>().ok().and_then(BigRational::from_float).ok_or(e),
        },
    }
}

fn parse_sqrt_arg(text: &str) -> Option<&str> {
    let rest = text.strip_prefix("sqrt")?;
    Some(rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest))
}

/// Parses `"1"`, `"3/2"`, `"sqrt2"` / `"sqrt(2)"` exactly, and any other number
/// as a float element.
pub fn parse_basis_element(text: &str) -> Result<BasisElement> {
    let text = text.trim();
    if let Some(arg) = parse_sqrt_arg(text) {
        let n: u64 = arg
            .trim()
            .parse()
            .map_err(|_| config_error(format!("`{text}`: expected sqrtN with a positive integer N")))?;
        let root = (n as f64).sqrt().round() as u64;
        if root * root == n {
            return Ok(BasisElement::Rational(BigRational::from_integer(root.into())));
        }
        return Ok(BasisElement::Sqrt(n));
    }
    if text.contains('/') || text.parse::<i64>().is_ok() {
        return Ok(BasisElement::Rational(parse_rational(text)?));
    }
    text.parse::<f64>()
        .map(BasisElement::Float)
        .map_err(|_| config_error(format!("`{text}` is not a basis element")))
}

/// Parses a product of factors such as `"pi"`, `"-pi/2"`, `"pi*sqrt2"`,
/// `"3/2*pi"` or `"0.7"`.
pub fn parse_image(text: &str) -> Result<f64> {
    let text = text.trim();
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, text),
    };
    let mut value = sign;
    for factor in body.split('*') {
        let factor = factor.trim();
        let (head, divisor) = match factor.split_once('/') {
            Some((h, d)) if !h.chars().all(|c| c.is_ascii_digit()) => (
                h,
                d.trim()
                    .parse::<f64>()
                    .map_err(|_| config_error(format!("`{text}`: bad divisor `{d}`")))?,
            ),
            _ => (factor, 1.0),
        };
        let v = if head == "pi" {
            PI
        } else if let Some(arg) = parse_sqrt_arg(head) {
            arg.trim()
                .parse::<f64>()
                .map_err(|_| config_error(format!("`{text}`: bad radicand")))?
                .sqrt()
        } else if head.contains('/') {
            use num_traits::ToPrimitive;
            parse_rational(head)?.to_f64().unwrap_or(f64::NAN)
        } else {
            head.parse::<f64>()
                .map_err(|_| config_error(format!("`{text}`: cannot parse factor `{head}`")))?
        };
        value *= v / divisor;
    }
    if !value.is_finite() {
        return Err(config_error(format!("`{text}` is not finite")));
    }
    Ok(value)
}

fn token_text(t: &Token) -> String {
    match t {
        Token::Number(x) => format!("{x:?}"),
        Token::Text(s) => s.clone(),
    }
}

fn coords(basis: &Arc<Basis>, tokens: &[Token], what: &str) -> Result<TimeVector> {
    let coords = tokens
        .iter()
        .map(|t| match t {
            Token::Number(x) => {
                BigRational::from_float(*x).ok_or_else(|| config_error(format!("{what}: {x} is not finite")))
            }
            Token::Text(s) => parse_rational(s),
        })
        .collect::<Result<Vec<_>>>()?;
    TimeVector::new(basis.clone(), coords).map_err(|e| config_error(format!("{what}: {e}")))
}

impl HamelConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_error(format!("hamel spec: {e}")))?;
        let elements = raw
            .basis
            .iter()
            .map(|t| match t {
                Token::Number(x) => Ok(BasisElement::Float(*x)),
                Token::Text(s) => parse_basis_element(s),
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = Arc::new(Basis::new(elements).map_err(|e| config_error(e.to_string()))?);
        let images = raw
            .images
            .iter()
            .map(|t| match t {
                Token::Number(x) => Ok(*x),
                Token::Text(s) => parse_image(s),
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = raw.images.iter().map(token_text).collect();
        let spec = AdditiveSpec::new(basis.clone(), &images, labels).map_err(|e| config_error(e.to_string()))?;
        let start = match &raw.start {
            Some(t) => coords(&basis, t, "start")?,
            None => TimeVector::zero(basis.clone()),
        };
        let end = match &raw.end {
            Some(t) => coords(&basis, t, "end")?,
            None => TimeVector::along(basis.clone(), 0, BigRational::from_integer(2.into()))?,
        };
        let radius = raw.radius.unwrap_or(0.5);
        if !(radius > 0.0 && radius < 1.0) {
            return Err(config_error(format!("radius {radius} must lie in (0, 1)")));
        }
        Ok(HamelConfig {
            spec,
            start,
            end,
            radius,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_error(format!("reading {}: {e}", path.display())))?;
        HamelConfig::from_toml(&text)
    }

    pub fn default_spec() -> Self {
        HamelConfig::from_toml(DEFAULT_SPEC_TOML).expect("built-in spec parses")
    }

    pub fn family(&self) -> Result<EvolutionFamily<TimeVector>> {
        hamel_family(&self.spec, self.start.clone(), self.end.clone()).map_err(|e| match e {
            Error::Domain(msg) => config_error(msg),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::Time;

    #[test]
    fn default_spec_parses() {
        let cfg = HamelConfig::default_spec();
        assert_eq!(cfg.spec.basis().labels(), ["1", "sqrt2"]);
        assert_eq!(cfg.spec.image_values(), [PI, 0.0]);
        assert_eq!(cfg.start.real_value(), 0.0);
        assert_eq!(cfg.end.real_value(), 2.0);
        assert_eq!(cfg.radius, 0.5);
        assert!(cfg.family().is_ok());
    }

    #[test]
    fn image_expressions() {
        assert_eq!(parse_image("pi").unwrap(), PI);
        assert_eq!(parse_image("-pi/2").unwrap(), -PI / 2.0);
        assert!((parse_image("pi*sqrt2").unwrap() - PI * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(parse_image("3/2*pi").unwrap(), 1.5 * PI);
        assert_eq!(parse_image("0.7").unwrap(), 0.7);
        assert!(parse_image("tau").is_err());
    }

    #[test]
    fn basis_elements() {
        assert_eq!(
            parse_basis_element("1").unwrap(),
            BasisElement::Rational(BigRational::from_integer(1.into()))
        );
        assert_eq!(parse_basis_element("sqrt(3)").unwrap(), BasisElement::Sqrt(3));
        assert_eq!(
            parse_basis_element("sqrt4").unwrap(),
            BasisElement::Rational(BigRational::from_integer(2.into()))
        );
        assert_eq!(parse_basis_element("2.5").unwrap(), BasisElement::Float(2.5));
        assert!(parse_basis_element("e").is_err());
    }

    #[test]
    fn integer_images_and_defaults() {
        let cfg = HamelConfig::from_toml("basis = [\"1\", \"sqrt3\"]\nimages = [1, 0]\n").unwrap();
        assert_eq!(cfg.spec.image_values(), [1.0, 0.0]);
        assert_eq!(cfg.end.real_value(), 2.0);
    }

    #[test]
    fn malformed_specs_are_config_errors() {
        for bad in [
            "basis = [\"1\", \"sqrt2\"",
            "basis = [\"1\", \"sqrt2\"]\nimages = [\"pi\"]\n",
            "basis = [\"1\", \"2\"]\nimages = [1, 2]\n",
            "basis = [\"1\"]\nimages = [1]\nradius = 1.5\n",
            "basis = [\"1\"]\nimages = [1]\ncolour = 3\n",
        ] {
            assert!(matches!(HamelConfig::from_toml(bad), Err(Error::Config(_))), "{bad}");
        }
    }
}

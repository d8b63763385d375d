//! Reproducible sampling: random maps over the primitive grammar and
//! low-discrepancy points in subdisks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use super::DiskMap;

/// Radical inverse of `index` in the given base (van der Corput).
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut acc = 0.0;
    while index > 0 {
        acc += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    acc
}

/// Halton points in `𝔻(r)` mapped by `(u, v) ↦ r√u·e^{2πiv}`, which covers the
/// disk uniformly in area. `offset` selects the starting index so different
/// seeds give different (still reproducible) point sets.
pub fn halton_disk_points(n: usize, r: f64, offset: u64) -> Vec<Complex64> {
    (0..n as u64)
        .map(|k| {
            let i = offset + k + 1;
            let u = radical_inverse(i, 2);
            let v = radical_inverse(i, 3);
            Complex64::from_polar(r * u.sqrt(), TAU * v)
        })
        .collect()
}

/// `n` equispaced points on the circle `|z| = r`.
pub fn circle_points(n: usize, r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(r, TAU * k as f64 / n as f64))
        .collect()
}

/// Which primitives [`random_map`] may draw.
#[derive(Debug, Clone, Copy)]
pub struct MapGrammar {
    /// Largest `|λ|` for Möbius parameters.
    pub mobius_max: f64,
    /// Allow the degree-two Blaschke product (non-injective custom node).
    pub blaschke: bool,
}

impl Default for MapGrammar {
    fn default() -> Self {
        MapGrammar {
            mobius_max: 0.95,
            blaschke: true,
        }
    }
}

fn random_in_disk<R: Rng + ?Sized>(rng: &mut R, max: f64) -> Complex64 {
    let r = max * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

/// One random primitive.
pub fn random_primitive<R: Rng + ?Sized>(rng: &mut R, grammar: MapGrammar) -> DiskMap {
    let kinds = if grammar.blaschke { 6 } else { 5 };
    match rng.random_range(0..kinds) {
        0 => DiskMap::identity(),
        1 => DiskMap::rotation(TAU * rng.random::<f64>()),
        2 => DiskMap::scale(random_in_disk(rng, 1.0)).expect("|λ| ≤ 1"),
        3 => DiskMap::scale(Complex64::from_polar(1.0, TAU * rng.random::<f64>())).expect("unimodular"),
        4 => DiskMap::mobius(random_in_disk(rng, grammar.mobius_max)).expect("|λ| < 1"),
        _ => DiskMap::blaschke2(random_in_disk(rng, grammar.mobius_max)).expect("|λ| < 1"),
    }
}

/// A composition of between 1 and `max_depth` random primitives.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, grammar: MapGrammar) -> DiskMap {
    let depth = rng.random_range(1..=max_depth.max(1));
    let mut map = random_primitive(rng, grammar);
    for _ in 1..depth {
        map = random_primitive(rng, grammar).after(&map);
    }
    map
}

/// `σ_{−f(0)} ∘ f`, the origin-fixing normalization of `f`.
pub fn normalize_at_origin(map: &DiskMap) -> crate::Result<DiskMap> {
    let w0 = map.eval(Complex64::new(0.0, 0.0))?;
    Ok(DiskMap::mobius(-w0)?.after(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(1, 3) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn halton_points_stay_inside() {
        let pts = halton_disk_points(500, 0.7, 17);
        assert!(pts.iter().all(|z| z.norm() < 0.7));
        assert_eq!(pts, halton_disk_points(500, 0.7, 17));
    }

    #[test]
    fn random_maps_are_reproducible_and_bounded() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = random_map(&mut a, 6, MapGrammar::default());
            let g = random_map(&mut b, 6, MapGrammar::default());
            assert_eq!(f.to_string(), g.to_string());
            assert!(f.primitive_count() <= 6);
            for z in halton_disk_points(16, 0.95, 0) {
                assert!(f.eval(z).unwrap().norm() < 1.0);
            }
        }
    }

    #[test]
    fn normalization_fixes_origin() {
        let f = DiskMap::mobius(Complex64::new(0.3, 0.4)).unwrap();
        let g = normalize_at_origin(&f).unwrap();
        assert!(g.eval(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-16);
    }
}

//! Invariants checked on random inputs.

use evofam::diagnostics::{reverse_residuals, semigroup_residual, GridSpec};
use evofam::diskmap::sample::{halton_disk_points, normalize_at_origin, random_map, MapGrammar};
use evofam::diskmap::{fixed_origin_growth, identity_deviation, schwarz_pick_upper, DiskMap};
use evofam::evolution::{
    conjugate_to_fix_origin, glue, make_mobius_conjugated, make_radial, make_rotation, reverse_dual, Trajectory,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn disk_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn map_from_seed(seed: u64) -> DiskMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_map(&mut rng, 6, MapGrammar::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mobius_inverse(lambda in disk_point(0.95)) {
        let round = DiskMap::mobius(-lambda).unwrap().after(&DiskMap::mobius(lambda).unwrap());
        for z in halton_disk_points(64, 0.95, 0) {
            prop_assert!((round.eval(z).unwrap() - z).norm() < 1e-12);
        }
    }

    #[test]
    fn schwarz_pick_on_random_maps(seed in any::<u64>()) {
        let map = map_from_seed(seed);
        let w0 = map.eval(Complex64::new(0.0, 0.0)).unwrap().norm();
        for z in halton_disk_points(64, 0.95, seed % 1000) {
            let bound = schwarz_pick_upper(z.norm(), w0).unwrap();
            prop_assert!(map.eval(z).unwrap().norm() <= bound + 1e-12, "{}", map);
        }
    }

    #[test]
    fn origin_fixing_bounds(seed in any::<u64>()) {
        let map = normalize_at_origin(&map_from_seed(seed)).unwrap();
        let mut lambda = map.deriv(Complex64::new(0.0, 0.0)).unwrap();
        prop_assert!(lambda.norm() <= 1.0 + 1e-12);
        if lambda.norm() > 1.0 {
            lambda *= (1.0 - f64::EPSILON) / lambda.norm();
        }
        for z in halton_disk_points(64, 0.9, 3) {
            let w = map.eval(z).unwrap();
            prop_assert!(w.norm() <= fixed_origin_growth(z.norm(), lambda.norm()).unwrap() + 1e-12);
            if lambda.norm() * z.norm() < 1.0 {
                prop_assert!((w - z).norm() <= identity_deviation(z.norm(), lambda).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences(seed in any::<u64>()) {
        let map = map_from_seed(seed);
        let h = 1e-6;
        for z in halton_disk_points(64, 0.8, 11) {
            let exact = map.deriv(z).unwrap();
            let fd = (map.eval(z + h).unwrap() - map.eval(z - h).unwrap()) / (2.0 * h);
            let scale = exact.norm().max(1e-3);
            prop_assert!((exact - fd).norm() / scale < 1e-6, "{} at {}", map, z);
        }
    }

    #[test]
    fn conjugation_fixes_origin(z0 in disk_point(0.9), s in 0.0..1.0f64, dt in 0.0..1.0f64) {
        let base = make_mobius_conjugated(
            &make_rotation(0.0, 1.0, |t| 2.0 * t).unwrap(),
            Trajectory::new(|t: &f64| Ok(Complex64::from_polar(0.4, 3.0 * t))),
        ).unwrap();
        let (fixed, _) = conjugate_to_fix_origin(&base, z0).unwrap();
        let t = (s + dt).min(1.0);
        prop_assert!(fixed.eval(&s, &t, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn glued_rotations_add_phases(split in 0.1..0.9f64, s in 0.0..1.0f64, dt in 0.0..1.0f64, z in disk_point(0.9)) {
        let glued = glue(
            &make_rotation(0.0, split, |t| t).unwrap(),
            &make_rotation(split, 1.0, |t| t).unwrap(),
        ).unwrap();
        let whole = make_rotation(0.0, 1.0, |t| t).unwrap();
        let t = (s + dt).min(1.0);
        prop_assert!((glued.eval(&s, &t, z).unwrap() - whole.eval(&s, &t, z).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn reverse_dual_swaps_order(a in -2.0..0.0f64, len in 0.1..2.0f64) {
        let fam = make_radial(a, a + len).unwrap();
        let dual = reverse_dual(&fam);
        prop_assert_eq!(*dual.start(), -(a + len));
        let grid = GridSpec::default().with_n_time(5);
        let (tm1, tm2) = reverse_residuals(&dual, &grid).unwrap();
        prop_assert!(tm1 < 1e-15 && tm2 < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn conjugated_families_keep_semigroup(radius in 0.0..0.8f64, speed in -3.0..3.0f64) {
        let fam = make_mobius_conjugated(
            &make_radial(0.0, 1.0).unwrap(),
            Trajectory::new(move |t: &f64| Ok(Complex64::from_polar(radius, speed * t))),
        ).unwrap();
        let grid = GridSpec::default().with_n_time(5);
        prop_assert!(semigroup_residual(&fam, &grid).unwrap() < 1e-12);
    }
}

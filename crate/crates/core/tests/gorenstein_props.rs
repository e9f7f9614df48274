mod common;

use common::{config, fixture, fixture_and_seed, sample, samples, sum, Fixture};
use gorkit::gorenstein::{
    complete_resolution_from, findim_check, finite_pd, gdim, gorenstein_ext, gorenstein_ext_direct, is_gp,
    special_approximation, tate_ext_in, unit_map,
};
use gorkit::modcat::Module;
use gorkit::oracle::random_extension;
use gorkit::resolve::{ext_dim, min_projective_resolution, pd, DimValue};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn d(f: &Fixture) -> usize {
    f.cert.d().unwrap()
}

/// `Ω^d M` is Gorenstein projective over a `d`-Gorenstein algebra.
fn gp_sample(f: &Fixture, seed: u64) -> Module {
    let m = sample(f, seed);
    let res = min_projective_resolution(&m, d(f) + 1);
    if d(f) < res.len() {
        res.syzygy(d(f)).clone()
    } else {
        Module::zero(&f.alg)
    }
}

fn gp_test_objects(f: &Fixture) -> Vec<Module> {
    (0..f.alg.vertex_count())
        .map(|v| {
            let mut m = Module::simple(&f.alg, v);
            for _ in 0..d(f) {
                m = m.syzygy();
            }
            m
        })
        .collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn resolving_closure((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (x, z) = (sample(f, seed), gp_sample(f, seed ^ 5));
        prop_assert!(is_gp(&z, &f.cert).unwrap());
        let y = random_extension(&x, &z, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(is_gp(&x, &f.cert).unwrap(), is_gp(&y, &f.cert).unwrap());
        // closed under sums and summands
        let w = sample(f, seed ^ 6);
        let both = is_gp(&x, &f.cert).unwrap() && is_gp(&w, &f.cert).unwrap();
        prop_assert_eq!(is_gp(&sum(&x, &w), &f.cert).unwrap(), both);
    }

    #[test]
    fn gp_modules_have_no_intermediate_pd((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let g = gp_sample(f, seed);
        match pd(&g, f.cert.cap()) {
            DimValue::Exact(p) => prop_assert_eq!(p, 0),
            DimValue::AtLeast(_) | DimValue::Infinite(_) => {}
        }
    }

    #[test]
    fn gdim_of_sum_is_max((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (x, y) = (sample(f, seed), sample(f, seed ^ 7));
        let (gx, gy) = (gdim(&x, &f.cert).unwrap(), gdim(&y, &f.cert).unwrap());
        prop_assert_eq!(gdim(&sum(&x, &y), &f.cert).unwrap(), gx.max(gy));
        prop_assert!(gx <= d(f));
    }

    #[test]
    fn gdim_is_pd_when_finite((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let x = sample(f, seed);
        if let Some(p) = finite_pd(&x, &f.cert).unwrap() {
            prop_assert_eq!(gdim(&x, &f.cert).unwrap(), p);
            prop_assert_eq!(pd(&x, f.cert.cap()).exact(), Some(p));
        }
    }

    #[test]
    fn finitistic_dimension_is_bounded((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let ms: Vec<(String, Module)> = samples(f, seed, 4).into_iter().enumerate().map(|(k, m)| (k.to_string(), m)).collect();
        let report = findim_check(&f.cert, &ms).unwrap();
        prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
        prop_assert!(report.max_finite_pd <= d(f));
    }

    #[test]
    fn double_dual_of_gp_is_identity((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let g = gp_sample(f, seed);
        let (_, ffg, eta) = unit_map(&g).unwrap();
        prop_assert!(eta.is_isomorphism());
        prop_assert_eq!(ffg.module.dims(), g.dims());
    }

    #[test]
    fn non_projective_gp_is_detected_by_test_objects((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let g = gp_sample(f, seed);
        if !g.is_projective() {
            let hit = gp_test_objects(f).iter().any(|t| ext_dim(t, &g, 1).unwrap() > 0);
            prop_assert!(hit);
        }
    }

    #[test]
    fn ge_is_dual_over_opposite((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (x, y) = (sample(f, seed), sample(f, seed ^ 8));
        let op = f.cert.opposite();
        for j in 0..=d(f) + 1 {
            prop_assert_eq!(
                gorenstein_ext(&x, &y, j, &f.cert).unwrap(),
                gorenstein_ext(&y.dualize(), &x.dualize(), j, &op).unwrap()
            );
        }
    }

    #[test]
    fn special_approximation_is_orthogonal((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let x = sample(f, seed);
        let a = special_approximation(&x, &f.cert).unwrap();
        prop_assert!(finite_pd(a.k(), &f.cert).unwrap().is_some());
        prop_assert!(is_gp(a.g(), &f.cert).unwrap());
        let mut tests = gp_test_objects(f);
        tests.push(a.g().clone());
        for t in &tests {
            prop_assert_eq!(ext_dim(t, a.k(), 1).unwrap(), 0);
        }
    }

    #[test]
    fn ge_routes_agree((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (x, y) = (sample(f, seed), sample(f, seed ^ 9));
        for k in 0..=d(f) + 2 {
            prop_assert_eq!(gorenstein_ext(&x, &y, k, &f.cert).unwrap(), gorenstein_ext_direct(&x, &y, k, &f.cert).unwrap());
        }
    }

    #[test]
    fn tate_is_independent_of_splice_depth((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (x, y) = (sample(f, seed), sample(f, seed ^ 10));
        let g = gdim(&x, &f.cert).unwrap();
        let a = complete_resolution_from(&x, &f.cert, 8, g).unwrap();
        let b = complete_resolution_from(&x, &f.cert, 8, g + 1).unwrap();
        for n in -3..=3 {
            prop_assert_eq!(tate_ext_in(&a, &x, &y, n).unwrap(), tate_ext_in(&b, &x, &y, n).unwrap());
        }
    }
}

use num::complex::Complex64;
use proptest::prelude::*;
use qmoduli::geo_maps::{
    chart_overlap_distance, cr_residual, degree_integral, energy_density, equivariance_residual, eval_plane,
    isometry_ratio, kernel_containment, plane_to_quadric, random_su2, sample_domain, verify_map, DomainPoint,
    EmbeddingMap, VerifyOptions,
};
use qmoduli::moduli::{family_point, gauge_class_key, key_distance, s1_rotate, ModuliSpace};
use qmoduli::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pt(chart: u8, re: f64, im: f64) -> DomainPoint {
    DomainPoint::new(chart, Complex64::new(re, im)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn charts_agree_on_the_overlap(k in 1u32..5, r in 0.85f64..1.15, t in 0.0f64..std::f64::consts::TAU) {
        let m = EmbeddingMap::standard(k).unwrap();
        let x = DomainPoint::new(0, Complex64::from_polar(r, t)).unwrap();
        prop_assert!(chart_overlap_distance(&m, &x).unwrap() < 1e-9);
    }

    #[test]
    fn quadric_points_are_isotropic(k in 1u32..5, chart in 0u8..2, r in 0.0f64..1.0, t in 0.0f64..std::f64::consts::TAU) {
        let m = EmbeddingMap::standard(k).unwrap();
        let x = DomainPoint::new(chart, Complex64::from_polar(r, t)).unwrap();
        prop_assert!(plane_to_quadric(&eval_plane(&m, &x).unwrap()).isotropy() < 1e-10);
    }
}

#[test]
fn real_standard_degree_and_energy() {
    let m = EmbeddingMap::real_standard(2).unwrap();
    assert_eq!(m.n_plus_2(), 5);
    assert!((degree_integral(&m).unwrap() - 4.0).abs() < 1e-3);
    let x = pt(1, 0.2, 0.6);
    assert!((energy_density(&m, &x).unwrap() - 2.0 * isometry_ratio(&m, &x).unwrap()).abs() < 1e-6);
    let m1 = EmbeddingMap::real_standard(1).unwrap();
    assert!((degree_integral(&m1).unwrap() - 2.0).abs() < 1e-3);
}

#[test]
fn deformed_maps_stay_holomorphic_and_isometric() {
    let ms = ModuliSpace::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let p = ms.random_interior(&mut rng).unwrap();
    let m = EmbeddingMap::deformed(&p).unwrap();
    for x in sample_domain(&mut rng, 5) {
        assert!(cr_residual(&m, &x).unwrap() < 1e-6);
        assert!((energy_density(&m, &x).unwrap() - 6.0).abs() < 1e-3);
    }
}

#[test]
fn boundary_kernels_lie_in_every_plane() {
    let ms = ModuliSpace::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xs = sample_domain(&mut rng, 8);
    for (t, s) in [(1.0, 0.0), (0.6, 0.8)] {
        let p = family_point(&ms, t, s).unwrap();
        let v = kernel_containment(&p, &xs, 1e-9).unwrap();
        assert!(v.contained, "({t},{s}): {}", v.residual);
        assert_eq!(v.reduced_target, (1, 3));
    }
    let interior = family_point(&ms, 0.2, 0.1).unwrap();
    assert!(matches!(kernel_containment(&interior, &xs, 1e-9), Err(Error::NotBoundary)));
}

#[test]
fn standard_map_is_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let gs: Vec<_> = (0..5).map(|_| random_su2(&mut rng)).collect();
    let xs = sample_domain(&mut rng, 5);
    for m in [EmbeddingMap::standard(3).unwrap(), EmbeddingMap::real_standard(2).unwrap()] {
        assert!(equivariance_residual(&m, &gs, &xs).unwrap() < 1e-8, "{}", m.label());
    }
}

#[test]
fn equal_keys_give_equal_plane_fields() {
    let ms = ModuliSpace::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let p = ms.random_interior(&mut rng).unwrap();
    let q = s1_rotate(&ms, &p, std::f64::consts::PI).unwrap();
    assert!(key_distance(&gauge_class_key(&p).unwrap(), &gauge_class_key(&q).unwrap()) < 1e-9);
    let (a, b) = (EmbeddingMap::deformed(&p).unwrap(), EmbeddingMap::deformed(&q).unwrap());
    for x in sample_domain(&mut rng, 6) {
        assert!(eval_plane(&a, &x).unwrap().distance(&eval_plane(&b, &x).unwrap()) < 1e-9);
    }
}

#[test]
fn verification_report_shape() {
    let m = EmbeddingMap::standard(2).unwrap();
    let opts = VerifyOptions { seed: 5, samples: 4, group_samples: Some(2), ..VerifyOptions::default() };
    let r = verify_map(&m, None, &opts).unwrap();
    assert!(r.passed());
    let v = serde_json::to_value(&r).unwrap();
    for key in ["map", "degree", "isometry", "cr_max", "quadric_max", "equivariance", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["isometry"]["mean"].is_number() && v["isometry"]["max_dev"].is_number());
    assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&verify_map(&m, None, &opts).unwrap()).unwrap());
}

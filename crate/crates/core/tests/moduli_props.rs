use std::f64::consts::PI;

use num::Zero;
use proptest::prelude::*;
use qmoduli::exact::{q_from_f64, Q};
use qmoduli::moduli::{
    gauge_class_key, key_distance, make_t, moduli_report, s1_rotate, sample_points, ModuliSpace, Status,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn space(k: u32) -> ModuliSpace {
    ModuliSpace::new(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn convex_combinations_stay_interior(k in 2u32..5, seed in any::<u64>(), lambda in 0.0f64..1.0) {
        let ms = space(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ms.random_interior(&mut rng).unwrap();
        let b = ms.random_interior(&mut rng).unwrap();
        let l = q_from_f64(lambda);
        let c = a.c().scale(&l).add(&b.c().scale(&(Q::from_integer(1.into()) - &l))).unwrap();
        prop_assert_eq!(make_t(&ms, &c).unwrap().status(), Status::Interior);
    }

    #[test]
    fn large_multiples_become_infeasible(k in 2u32..5, seed in any::<u64>()) {
        let ms = space(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = ms.random_direction(&mut rng, 1.0).unwrap();
        // trace(C) = 0 forces a negative eigenvalue, so min eig of Id + tD decreases in t
        let mut last = f64::INFINITY;
        for t in [0.5, 1.0, 2.0, 4.0] {
            let p = make_t(&ms, &d.scale(&q_from_f64(t))).unwrap();
            prop_assert!(p.min_eigenvalue() < last);
            last = p.min_eigenvalue();
        }
        let mu = make_t(&ms, &d).unwrap().min_eigenvalue() - 1.0;
        prop_assert!(mu < 0.0);
        let far = make_t(&ms, &d.scale(&q_from_f64(2.0 / -mu))).unwrap();
        prop_assert_eq!(far.status(), Status::Infeasible);
    }

    #[test]
    fn rotation_preserves_membership_status_and_norm(k in 2u32..5, seed in any::<u64>(), theta in 0.0f64..6.3) {
        let ms = space(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ms.random_interior(&mut rng).unwrap();
        let r = s1_rotate(&ms, &p, theta).unwrap();
        prop_assert!(ms.contains(r.c()));
        prop_assert_eq!(r.status(), p.status());
        let space = ms.space();
        let n0 = space.trace_form(p.c().coords(), p.c().coords());
        let n1 = space.trace_form(r.c().coords(), r.c().coords());
        let rel = (qmoduli::exact::q_to_f64(&n1) - qmoduli::exact::q_to_f64(&n0)).abs() / qmoduli::exact::q_to_f64(&n0);
        prop_assert!(rel < 1e-12);
    }

    #[test]
    fn sqrt_is_accurate(k in 1u32..5, seed in any::<u64>()) {
        let ms = space(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_points(&ms, &mut rng, 1).unwrap().remove(0);
        prop_assert!(p.sqrt_residual().unwrap() < 1e-10);
    }
}

#[test]
fn complex_structure_squares_to_minus_one_on_tangent() {
    for k in 2..=5u32 {
        let ms = space(k);
        for b in ms.tangent().basis() {
            let j = ms.space().left_complex_structure(b).unwrap();
            assert!(ms.tangent().contains(&j), "k={k}: J leaves the tangent space");
            let jj = ms.space().left_complex_structure(&j).unwrap();
            assert!(jj.iter().zip(b).all(|(x, y)| (x + y).is_zero()));
        }
    }
}

#[test]
fn full_period_rotation_fixes_the_key() {
    let ms = space(3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = ms.random_interior(&mut rng).unwrap();
    let r = s1_rotate(&ms, &p, 2.0 * PI / 3.0).unwrap();
    assert!(key_distance(&gauge_class_key(&p).unwrap(), &gauge_class_key(&r).unwrap()) < 1e-9);
    let h = s1_rotate(&ms, &p, PI / 3.0).unwrap();
    assert!(key_distance(&gauge_class_key(&p).unwrap(), &gauge_class_key(&h).unwrap()) > 1e-6);
}

#[test]
fn report_is_deterministic() {
    let ms = space(3);
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let pts = sample_points(&ms, &mut rng, 3).unwrap();
        serde_json::to_string(&moduli_report(&ms, true, &pts).unwrap()).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["dim"], 6);
    assert_eq!(v["labels"], serde_json::json!([[1, 2]]));
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    assert_eq!(v["samples"][0]["status"], "interior");
}

#[test]
fn degree_one_samples_are_the_origin() {
    let ms = space(1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = sample_points(&ms, &mut rng, 2).unwrap();
    assert!(pts.iter().all(|p| p.c().is_zero() && p.status() == Status::Interior));
}

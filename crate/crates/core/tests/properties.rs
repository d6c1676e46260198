use num::{One, Zero};
use proptest::prelude::*;
use qmoduli::decompose::{decompose, Query};
use qmoduli::exact::{q, Q};
use qmoduli::op_spaces::{
    g_span, gs_mv0_v0, gs_v0_v0, split_S, sym_pairs_span, Ambient, Carrier, OperatorSpace, Subspace,
};
use qmoduli::rep::{ComplexModule, LieModule};

fn unit(d: usize, i: usize) -> Vec<Q> {
    let mut e = vec![Q::zero(); d];
    e[i] = Q::one();
    e
}

fn small_vec(d: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(-3i64..=3, d).prop_map(|v| v.into_iter().map(q).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_are_skew(k in 0u32..7, seed in any::<u64>()) {
        let c = Carrier::complex(k);
        let d = c.dim();
        let u = unit(d, (seed % d as u64) as usize);
        let v = unit(d, ((seed / 7) % d as u64) as usize);
        for g in 0..3 {
            let lhs = c.inner(&c.generator(g).apply(&u), &v);
            let rhs = c.inner(&u, &c.generator(g).apply(&v));
            prop_assert_eq!(lhs, -rhs);
        }
    }

    #[test]
    fn sigma_is_equivariant_with_parity(k in 0u32..7, x in small_vec(16)) {
        let c = Carrier::complex(k);
        let d = c.dim();
        let x = &x[..d];
        let s = c.sigma().unwrap();
        for g in 0..3 {
            let a = s.apply(&c.generator(g).apply(x));
            let b = c.generator(g).apply(&s.apply(x));
            prop_assert_eq!(a, b);
        }
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        let ss = s.apply(&s.apply(x));
        prop_assert_eq!(ss, x.iter().map(|v| v * &sign).collect::<Vec<_>>());
    }

    #[test]
    fn weights_add_in_tensor_products(k in 0u32..5, l in 0u32..5, a in 0u32..5, b in 0u32..5) {
        let (a, b) = (a % (k + 1), b % (l + 1));
        let t = LieModule::realify(&ComplexModule::tensor(&ComplexModule::sym_power(k), &ComplexModule::sym_power(l)));
        let idx = (a * (l + 1) + b) as usize;
        let e = unit(t.dim(), 2 * idx);
        // U1 = iH, so the real part maps to the imaginary slot with the weight as factor
        let w = (2 * a as i64 - k as i64) + (2 * b as i64 - l as i64);
        let mut expected = vec![Q::zero(); t.dim()];
        expected[2 * idx + 1] = q(w);
        prop_assert_eq!(t.act(0, &e), expected);
    }

    #[test]
    fn formulas_match_oracles(k in 0u32..7, l in 0u32..7) {
        prop_assert!(decompose(Query::CgReal(k, l)).unwrap().ok());
        prop_assert!(decompose(Query::CgComplex(k, l)).unwrap().ok());
        prop_assert!(decompose(Query::SymSquare(k)).unwrap().ok());
    }

    #[test]
    fn g_span_is_idempotent(k in 1u32..4, u in small_vec(8), v in small_vec(8)) {
        let space = OperatorSpace::complex(k);
        let d = space.carrier_dim();
        let (u, v) = (u[..d].to_vec(), v[..d].to_vec());
        let amb = Ambient::Carrier(space.carrier().kind());
        let su = Subspace::span(amb.clone(), d, [&u]);
        let sv = Subspace::span(amb, d, [&v]);
        let seed = sym_pairs_span(&su, &sv, &space);
        let once = g_span(&seed, &space);
        let twice = g_span(&once, &space);
        prop_assert!(once.same_as(&twice));
        prop_assert!(once.contains_subspace(&seed));
    }
}

#[test]
fn four_blocks_are_orthogonal() {
    for k in 1..=4u32 {
        let space = OperatorSpace::complex(k);
        let blocks = split_S(k).unwrap();
        let bs = blocks.blocks();
        for i in 0..4 {
            for j in i + 1..4 {
                for x in bs[i].basis() {
                    for y in bs[j].basis() {
                        assert!(space.trace_form(x, y).is_zero(), "k={k} blocks {i},{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn v0_span_inside_mv0_span_plus_identity() {
    for k in 1..=6u32 {
        let space = OperatorSpace::complex(k);
        let big = gs_mv0_v0(k, &space).with_vector(space.identity());
        assert!(big.contains_subspace(&gs_v0_v0(k, &space)), "k={k}");
    }
}

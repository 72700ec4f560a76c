//! Structural invariants checked on random inputs.

use cartan_cs::algebra::{cayley, cayley_inverse, make_group_element, matrix_from_z, max_abs2, max_abs4, random_point};
use cartan_cs::basis::{bergman_kernel, indices_up_to, mc_inner_product, basis_eval};
use cartan_cs::fock::{
    compound_basis, exchange, ladder_cs, su11_generators, FockOperator, Helicity, LadderCsConstruction,
};
use cartan_cs::wigner::{wigner_d, SpinLabel};
use cartan_cs::{CartanPoint, ComplexMatrix2, ComplexMatrix4, FockVector, Polynomial, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c64() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b))
}

fn matrix() -> impl Strategy<Value = ComplexMatrix2> {
    [c64(), c64(), c64(), c64()].prop_map(|z| ComplexMatrix2::new(z[0], z[1], z[2], z[3]))
}

fn point(max_norm: f64) -> impl Strategy<Value = CartanPoint> {
    any::<u64>().prop_map(move |s| random_point(&mut ChaCha8Rng::seed_from_u64(s), max_norm))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4, 0u32..4), c64()), 0..8)
        .prop_map(|ts| Polynomial::from_terms(ts.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], k))))
}

fn two_mode_state() -> impl Strategy<Value = FockVector> {
    prop::collection::vec(((0u32..4, 0u32..4), c64()), 1..6).prop_map(|ts| {
        let mut v = FockVector::zero(2);
        for ((a, b), k) in ts {
            v = v.add(&FockVector::basis_state(2, &[a, b]).scale(k));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinate_change_roundtrips(p in polynomial()) {
        prop_assert!(p.z_to_entries().entries_to_z().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn wigner_is_multiplicative(x in matrix(), y in matrix(), two_j in 0u32..5) {
        let j = SpinLabel::new(two_j);
        let (dx, dy, dxy) = (wigner_d(j, &x), wigner_d(j, &y), wigner_d(j, &(x * y)));
        let n = j.dim();
        for r in 0..n {
            for c in 0..n {
                let prod: C64 = (0..n).map(|k| dx.at(r, k) * dy.at(k, c)).sum();
                prop_assert!((prod - dxy.at(r, c)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn kernel_is_hermitian(z in point(0.8), zp in point(0.8), lambda in 4i64..8) {
        let a = bergman_kernel(&z, &zp, lambda).unwrap();
        let b = bergman_kernel(&zp, &z, lambda).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn cayley_roundtrips(z in point(0.9)) {
        let back = cayley_inverse(&cayley(&z).unwrap()).unwrap();
        prop_assert!(max_abs2(&(back.matrix() - z.matrix())) < 1e-10);
    }

    #[test]
    fn group_element_inverse_composes_to_identity(z in point(0.8)) {
        let g = make_group_element(&z).unwrap();
        prop_assert!(g.pseudo_unitarity_residual() < 1e-10);
        let e = g.compose(&g.inverse()).matrix();
        prop_assert!(max_abs4(&(e - ComplexMatrix4::identity())) < 1e-10);
    }

    #[test]
    fn fock_json_roundtrips(v in two_mode_state()) {
        let back = FockVector::from_json(&v.to_json()).unwrap();
        prop_assert_eq!(back.max_abs_diff(&v), 0.0);
    }

    #[test]
    fn su11_closes_on_random_states(v in two_mode_state()) {
        let [q3, qp, qm, _] = su11_generators().map(|q| FockOperator::from(&q));
        let diff = |a: &FockOperator, b: &FockOperator| a.apply(&v).unwrap().max_abs_diff(&b.apply(&v).unwrap());
        prop_assert!(diff(&q3.commutator(&qp), &qp) < 1e-12);
        prop_assert!(diff(&q3.commutator(&qm), &qm.scale(C64::new(-1.0, 0.0))) < 1e-12);
        prop_assert!(diff(&qp.commutator(&qm), &q3.scale(C64::new(-2.0, 0.0))) < 1e-12);
    }

    #[test]
    fn ladder_constructions_agree(
        a in -0.25f64..0.25, b in -0.25f64..0.25, c in -0.25f64..0.25, two_kappa in 1u32..4,
    ) {
        let z = [C64::new(a, 0.5 * b), C64::new(b, 0.0), C64::new(0.0, c)];
        let s = ladder_cs(two_kappa, z, 6, LadderCsConstruction::Series, Helicity::Positive).unwrap();
        let e = ladder_cs(two_kappa, z, 6, LadderCsConstruction::Exponential, Helicity::Positive).unwrap();
        prop_assert!(s.max_abs_diff(&e) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_is_deterministic(seed in any::<u64>()) {
        let idx = indices_up_to(4, 1)[1];
        let f = |z: &ComplexMatrix2| basis_eval(&idx, z).unwrap();
        let a = mc_inner_product(f, f, 4, 20_000, seed).unwrap();
        let b = mc_inner_product(f, f, 4, 20_000, seed).unwrap();
        prop_assert_eq!(a.estimate, b.estimate);
        prop_assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn exchange_is_an_involution() {
    for lambda in [3, 4] {
        for idx in indices_up_to(lambda, 2) {
            let v = compound_basis(&idx).unwrap();
            let back = exchange(&exchange(&v).unwrap()).unwrap();
            assert!(back.max_abs_diff(&v) < 1e-14, "{idx}");
        }
    }
}

#[test]
fn matrix_from_z_matches_sigma_expansion() {
    let z = [C64::new(0.1, 0.2), C64::new(-0.3, 0.0), C64::new(0.0, 0.4), C64::new(0.2, -0.1)];
    let m = matrix_from_z(z);
    assert!((m[(0, 0)] - (z[0] + z[3])).norm() < 1e-15);
    assert!((m[(0, 1)] - (z[1] - C64::i() * z[2])).norm() < 1e-15);
    assert!((m[(1, 0)] - (z[1] + C64::i() * z[2])).norm() < 1e-15);
    assert!((m[(1, 1)] - (z[0] - z[3])).norm() < 1e-15);
}

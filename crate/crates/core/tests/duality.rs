use proptest::prelude::*;
use superdual::duality::*;
use superdual::exactlin::{algebra_closure, commutant, subspace_equal, ExactMatrix, Q};
use superdual::glsuper::{regular_nilpotent, NilpotentData};
use superdual::hecke::CharVector;
use superdual::superindex::SuperSpace;
use superdual::tensoract::{psi_generators, random_even_invertible, TensorSpace};
use superdual::Error;

#[test]
fn sergeev_small_grid() {
    for (m, n, d) in sergeev_grid(27).into_iter().filter(|c| c.2 >= 2) {
        let r = verify_sergeev(m, n, d, 27).unwrap();
        assert!(r.equal, "({m},{n},{d}): {:?}", r.checks);
        assert_eq!(r.lhs_dim, r.rhs_dim);
    }
}

#[test]
fn sergeev_dimensions() {
    // d = 2: S^2 V and Λ^2 V are simple, so End_gl(V⊗V) = <1, s>.
    assert_eq!(verify_sergeev(1, 2, 2, 64).unwrap().lhs_dim, 2);
    // ψ_3 is faithful on (1|2)^{⊗3}.
    assert_eq!(verify_sergeev(1, 2, 3, 64).unwrap().lhs_dim, 6);
    // gl(1|1): only hook partitions survive, and λ = (2,1) has dimension 2.
    assert_eq!(verify_sergeev(1, 1, 3, 64).unwrap().lhs_dim, 1 + 1 + 4);
}

#[test]
fn grid_shape() {
    let g = sergeev_grid(64);
    assert!(g.contains(&(1, 1, 6)) && g.contains(&(2, 2, 3)) && g.contains(&(32, 32, 1)));
    assert!(!g.contains(&(1, 1, 7)) && !g.contains(&(2, 3, 3)));
    assert!(g.iter().all(|&(m, n, d)| m <= n && (m + n).pow(d as u32) <= 64));
}

#[test]
fn elementary_and_chevalley_generators_agree() {
    let ts = TensorSpace::new(SuperSpace::new(1, 2), 2).unwrap();
    let a = gl_generator_images(&ts).unwrap();
    let b = gl_elementary_images(&ts).unwrap();
    assert!(subspace_equal(&commutant(9, &a).unwrap(), &commutant(9, &b).unwrap()).unwrap());
    assert!(subspace_equal(&algebra_closure(9, &a, true).unwrap(), &algebra_closure(9, &b, true).unwrap()).unwrap());
}

#[test]
fn vust_cases() {
    let cases = [
        ("1|1", 1, 1, 2),
        ("1|1", 1, 1, 3),
        ("1|2", 1, 2, 2),
        ("1|2", 1, 2, 3),
        ("1|1,1", 1, 2, 2),
        ("1|1,1", 1, 2, 3),
        ("1|2,1", 1, 3, 2),
        ("2|1,1", 2, 2, 2),
        ("1,1|2", 2, 2, 2),
        ("1|2,1", 1, 3, 3),
    ];
    for (p, m, n, d) in cases {
        let e = NilpotentData::parse(p, m, n).unwrap();
        let r = verify_vust(m, n, d, &e, 64).unwrap();
        assert!(r.equal, "{p} d={d}: {:?}", r.checks);
        assert_eq!(r.params.partitions.as_deref(), Some(p));
    }
}

#[test]
fn vust_zero_nilpotent_is_sergeev() {
    for (p, m, n, d) in [("1|1", 1, 1, 3), ("1|1,1", 1, 2, 3)] {
        let zero = NilpotentData::parse(p, m, n).unwrap();
        assert!(zero.matrix().is_zero());
        let v = verify_vust(m, n, d, &zero, 64).unwrap();
        assert_eq!(v.lhs_dim, verify_sergeev(m, n, d, 64).unwrap().rhs_dim);
    }
    let e = NilpotentData::parse("1|2,1", 1, 3).unwrap();
    assert!(!e.matrix().is_zero() && !e.is_regular());
}

#[test]
fn trunc_poly_cases() {
    for (m, n, d) in [(1, 2, 2), (1, 2, 3), (2, 2, 2), (1, 1, 2), (1, 3, 2)] {
        let r = verify_trunc_poly_dc(m, n, d, 64).unwrap();
        assert!(r.equal, "({m},{n},{d}): {:?}", r.checks);
        assert_eq!(r.checks.len(), 2);
    }
}

#[test]
fn hecke_dc_cases() {
    for (m, n, d, c) in [(1, 2, 2, "0,0"), (1, 2, 2, "1,2"), (2, 2, 2, "0,0"), (2, 2, 2, "1/2,3"), (1, 2, 3, "1,2")] {
        let c = CharVector::parse(c, n).unwrap();
        let r = verify_hecke_dc(m, n, d, &c, 4, 64).unwrap();
        assert!(r.equal, "({m},{n},{d}) c={c}: {:?}", r.checks);
        assert_eq!(r.lhs_dim, r.rhs_dim);
    }
}

#[test]
fn hecke_dc_needs_two_slots() {
    assert!(matches!(verify_hecke_dc(1, 2, 1, &CharVector::zero(2), 4, 64), Err(Error::InvalidParams(_))));
}

#[test]
fn filtration_cases() {
    for (m, n, d, c) in [(1, 1, 2, "0"), (1, 2, 2, "1,2"), (2, 2, 2, "0,1"), (1, 2, 3, "0,0")] {
        let r = filtration_consistency(m, n, d, &CharVector::parse(c, n).unwrap(), 64).unwrap();
        assert!(r.equal, "({m},{n},{d}): {:?}", r.checks);
    }
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(verify_sergeev(2, 2, 4, 64), Err(Error::CapExceeded { estimate: 256, cap: 64 })));
    assert!(matches!(verify_trunc_poly_dc(1, 2, 3, 26), Err(Error::CapExceeded { .. })));
    assert!(verify_sergeev(2, 2, 4, 256).is_ok());
}

#[test]
fn rejects_bad_params() {
    assert!(matches!(verify_sergeev(2, 1, 2, 64), Err(Error::InvalidParams(_))));
    assert!(matches!(verify_sergeev(1, 1, 0, 64), Err(Error::InvalidParams(_))));
    let e = regular_nilpotent(1, 2).unwrap();
    assert!(verify_vust(1, 1, 2, &e, 64).is_err());
}

#[test]
fn report_json_round_trip() {
    let r = verify_trunc_poly_dc(1, 2, 2, 64).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: DualityReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.elapsed_ms, 0);
}

fn tensor_power(g: &ExactMatrix, d: usize) -> ExactMatrix {
    (1..d).fold(g.clone(), |acc, _| acc.kron(g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // An even change of basis g acts by g^{⊗d}, which commutes with ψ_d(S_d);
    // conjugating φ_d(gl) by it leaves both sides of the duality unchanged.
    #[test]
    fn conjugation_stability(seed in any::<u64>(), (m, n, d) in prop::sample::select(vec![(1, 1, 2), (1, 2, 2), (1, 1, 3)])) {
        let ts = TensorSpace::new(SuperSpace::new(m, n), d).unwrap();
        let (g, g_inv) = random_even_invertible(ts.space, seed);
        let big = tensor_power(&g.matrix, d);
        let big_inv = tensor_power(&g_inv.matrix, d);
        prop_assert_eq!(big.mul(&big_inv), ExactMatrix::identity(ts.dim()));
        let sd = psi_generators(&ts);
        for s in &sd {
            prop_assert_eq!(big.mul(s), s.mul(&big));
        }
        let gl = gl_generator_images(&ts).unwrap();
        let conj: Vec<ExactMatrix> = gl.iter().map(|x| big.mul(x).mul(&big_inv)).collect();
        let dim = ts.dim();
        prop_assert!(subspace_equal(&commutant(dim, &conj).unwrap(), &commutant(dim, &gl).unwrap()).unwrap());
        let closure = algebra_closure(dim, &gl, true).unwrap();
        prop_assert!(subspace_equal(&algebra_closure(dim, &conj, true).unwrap(), &closure).unwrap());
        prop_assert!(subspace_equal(&commutant(dim, &conj).unwrap(), &algebra_closure(dim, &sd, true).unwrap()).unwrap());
    }

    #[test]
    fn hecke_dc_random_c(c in prop::collection::vec((-4i64..=4, 1i64..=3), 2)) {
        let c = CharVector::new(c.into_iter().map(|(a, b)| Q::new(a, b)).collect(), 2).unwrap();
        let r = verify_hecke_dc(1, 2, 2, &c, 4, 64).unwrap();
        prop_assert!(r.equal, "{:?}", r.checks);
    }
}

#[test]
fn double_commutant_of_each_side() {
    for (m, n, d) in [(1, 2, 2), (1, 1, 3), (2, 2, 2)] {
        let ts = TensorSpace::new(SuperSpace::new(m, n), d).unwrap();
        let dim = ts.dim();
        for gens in [gl_generator_images(&ts).unwrap(), psi_generators(&ts)] {
            let comm = commutant(dim, &gens).unwrap();
            let back = commutant(dim, &comm.matrices(dim)).unwrap();
            assert!(subspace_equal(&back, &algebra_closure(dim, &gens, true).unwrap()).unwrap());
        }
    }
}

#[test]
fn hecke_side_matches_trunc_poly_side() {
    for (m, n, d) in [(1, 2, 2), (2, 2, 2), (1, 2, 3)] {
        let h = verify_hecke_dc(m, n, d, &CharVector::zero(n), 2, 64).unwrap();
        let ts = TensorSpace::new(SuperSpace::new(m, n), d).unwrap();
        let e = regular_nilpotent(m, n).unwrap();
        let tp = commutant(ts.dim(), &trunc_poly_generators(&ts, &e).unwrap()).unwrap();
        assert_eq!(h.lhs_dim, tp.dim(), "({m},{n},{d})");
        assert_eq!(h.rhs_dim, tp.dim(), "({m},{n},{d})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn generator_order_is_irrelevant(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let ts = TensorSpace::new(SuperSpace::new(1, 2), 2).unwrap();
        let mut gl = gl_generator_images(&ts).unwrap();
        let base_c = commutant(9, &gl).unwrap();
        let base_a = algebra_closure(9, &gl, true).unwrap();
        gl.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(commutant(9, &gl).unwrap(), base_c);
        prop_assert_eq!(algebra_closure(9, &gl, true).unwrap(), base_a);
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superdual::exactlin::{algebra_closure, commutant, subspace_equal, ExactMatrix, Subspace, Q};
use superdual::glsuper::{parity_operator, regular_nilpotent, supertrace, GlElement};
use superdual::superindex::{admissible_triples, j_pairs, Permutation, Pyramid, SuperIndex, SuperSpace};
use superdual::tensoract::*;

fn b(v: u16) -> SuperIndex {
    SuperIndex::Barred(v)
}
fn u(v: u16) -> SuperIndex {
    SuperIndex::Unbarred(v)
}

fn poly_semidirect_generators(m: usize, n: usize, ts: &TensorSpace) -> Vec<ExactMatrix> {
    let e = regular_nilpotent(m, n).unwrap();
    let mut gens = psi_generators(ts);
    for i in 1..=ts.d {
        gens.push(poly_insertion(ts, i, &e).unwrap());
    }
    gens
}

fn theta_span_check(m: usize, n: usize, d: usize) -> (usize, usize) {
    let p = Pyramid::new(m, n).unwrap();
    let ts = TensorSpace::new(p.space(), d).unwrap();
    let k = admissible_triples(&p);
    let gens = poly_semidirect_generators(m, n, &ts);
    let comm = commutant(ts.dim(), &gens).unwrap();
    let thetas: Vec<ExactMatrix> =
        theta_basis(&ts, &p, &k).into_iter().map(|t| t.operator).filter(|o| !o.is_zero()).collect();
    let span = Subspace::span_matrices(ts.dim() * ts.dim(), &thetas);
    assert_eq!(span.dim(), thetas.len(), "Θ operators are linearly independent");
    assert!(subspace_equal(&span, &comm).unwrap());
    let axioms = check_coefficient_axioms(&ts, &p, &k, &comm.matrices(ts.dim()));
    assert!(axioms.all(), "{axioms:?}");
    (comm.dim(), thetas.len())
}

#[test]
fn theta_spans_commutant_122() {
    assert_eq!(theta_span_check(1, 2, 2), (13, 13));
}

#[test]
fn theta_spans_commutant_222() {
    assert_eq!(theta_span_check(2, 2, 2), (32, 32));
}

#[test]
fn theta_d1_is_xi() {
    let p = Pyramid::new(1, 2).unwrap();
    let ts = TensorSpace::new(p.space(), 1).unwrap();
    let k = admissible_triples(&p);
    for (h, kk) in j_pairs(&p, &k) {
        let t = theta_operator(&ts, &p, &k, &[h], &[kk]).unwrap();
        assert_eq!(t.op, xi_tensor(&ts, &p, &[p.upsilon(h, kk)]));
    }
}

#[test]
fn theta_two_orbit_at_d2() {
    let p = Pyramid::new(1, 2).unwrap();
    let ts = TensorSpace::new(p.space(), 2).unwrap();
    let k = admissible_triples(&p);
    let j = j_pairs(&p, &k);
    for &(a1, b1) in &j {
        for &(a2, b2) in &j {
            let kap = [p.upsilon(a1, b1), p.upsilon(a2, b2)];
            if kap[0] == kap[1] {
                continue;
            }
            let delta: Vec<u8> = kap.iter().map(|t| t.parity().bit()).collect();
            // α(δ,δ) = ν(δ,s_1) = -1 exactly when both factors are odd.
            let lead = Q::sign(delta[0] & delta[1] == 1);
            let expect = xi_tensor(&ts, &p, &kap).scale(&lead).add(&xi_tensor(&ts, &p, &[kap[1], kap[0]]));
            let got = theta_operator(&ts, &p, &k, &[a1, a2], &[b1, b2]).unwrap();
            assert_eq!(got.op, expect);
        }
    }
}

#[test]
fn theta_rejects_inadmissible_pair() {
    let p = Pyramid::new(1, 2).unwrap();
    let ts = TensorSpace::new(p.space(), 1).unwrap();
    let k = admissible_triples(&p);
    // υ(2, 1) has a negative shift and never lies in K.
    assert!(theta_operator(&ts, &p, &k, &[u(2)], &[u(1)]).is_err());
    assert!(theta_operator(&ts, &p, &k, &[u(1), u(1)], &[u(1)]).is_err());
}

#[test]
fn theta_commutes_with_generators() {
    let p = Pyramid::new(1, 2).unwrap();
    let ts = TensorSpace::new(p.space(), 3).unwrap();
    let k = admissible_triples(&p);
    let gens = poly_semidirect_generators(1, 2, &ts);
    for entry in theta_basis(&ts, &p, &k).iter().step_by(7) {
        for g in &gens {
            assert!(entry.operator.commutator(g).is_zero(), "{:?}", entry.representative);
        }
    }
}

#[test]
fn comodule_counit_and_d1_terms() {
    let p = Pyramid::new(1, 2).unwrap();
    let k = admissible_triples(&p);
    for t in p.space().indices() {
        let terms = comodule_coeffs(&p, &k, &[t]);
        let diag: Vec<_> = terms.iter().filter(|c| c.s == vec![t]).collect();
        assert_eq!(diag.len(), 1);
        assert_eq!(diag[0].sign, 1);
        assert_eq!(diag[0].monomial[0].r, 0);
    }
    // v_1 sits in the leftmost column: only s = 1 pairs into K.
    let terms = comodule_coeffs(&p, &k, &[u(1)]);
    assert_eq!(terms.len(), 1);
    // v_1̄ receives v_1̄, v_1 and v_2 contributions.
    let terms = comodule_coeffs(&p, &k, &[b(1)]);
    assert_eq!(terms.iter().map(|c| c.s[0]).collect::<Vec<_>>(), vec![b(1), u(1)]);
    assert_eq!(terms[1].sign, -1);
}

/// Pairing the comodule coefficients with the ξ-dual of `x_κ` gives
/// `℘^{⊗d}` to the power `|κ|` composed with Θ_κ.
#[test]
fn comodule_reproduces_theta() {
    for (m, n) in [(1, 2), (2, 2)] {
        let p = Pyramid::new(m, n).unwrap();
        let ts = TensorSpace::new(p.space(), 2).unwrap();
        let k = admissible_triples(&p);
        let par = phi_parity(&ts);
        for entry in theta_basis(&ts, &p, &k) {
            let c = comodule_operator(&ts, &p, &k, &entry.representative);
            let odd = entry.representative.iter().map(|t| t.parity().bit()).fold(0, |a, b| a ^ b) == 1;
            let expect = if odd { par.mul(&entry.operator) } else { entry.operator.clone() };
            assert_eq!(c, expect, "{:?}", entry.representative);
        }
    }
}

fn phi_parity(ts: &TensorSpace) -> ExactMatrix {
    let p = parity_operator(ts.space);
    super_tensor(ts, &vec![(0u8, &p); ts.d])
}

#[test]
fn theta_sigma_examples() {
    let space = SuperSpace::new(1, 2);
    let e = GlElement::new(space, regular_nilpotent(1, 2).unwrap().matrix().clone()).unwrap();
    let x = GlElement::elementary(space, u(1), u(1));
    assert_eq!(theta_sigma(&Permutation::identity(1), std::slice::from_ref(&x)).unwrap(), supertrace(&x));
    assert_eq!(theta_sigma(&Permutation::identity(1), &[x]).unwrap(), Q::from_int(-1));
    assert_eq!(theta_sigma(&Permutation::transposition(2, 1), &[e.clone(), e]).unwrap(), Q::ZERO);
}

#[test]
fn theta_sigma_conjugation_invariance_122() {
    let space = SuperSpace::new(1, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let xs: Vec<GlElement> = (0..2).map(|_| random_gl(space, &mut rng, 4)).collect();
    for seed in 0..20 {
        let (g, gi) = random_even_invertible(space, seed);
        assert_eq!(g.mul(&gi).matrix, ExactMatrix::identity(3));
        let ys: Vec<GlElement> = xs.iter().map(|x| g.mul(x).mul(&gi)).collect();
        for s in Permutation::all(2) {
            assert_eq!(theta_sigma(&s, &xs).unwrap(), theta_sigma(&s, &ys).unwrap());
        }
    }
}

#[test]
fn filtration_degree_of_centralizer_action() {
    let p = Pyramid::new(1, 2).unwrap();
    let ts = TensorSpace::new(p.space(), 2).unwrap();
    let basis = superdual::glsuper::centralizer_combinatorial(1, 2).unwrap();
    for (t, x) in &basis.elements {
        let op = phi_d(&ts, x).unwrap();
        // e_{h,k} sends v_k to v_h, raising n - col by col(k) - col(h) = r.
        assert_eq!(filtration_degree(&op, &p, &ts), Some(t.r));
        assert_eq!(graded_component(&op, &p, &ts, t.r), op);
    }
}

#[test]
fn sergeev_small_case() {
    let space = SuperSpace::new(1, 1);
    let ts = TensorSpace::new(space, 2).unwrap();
    let gl: Vec<ExactMatrix> = space
        .indices()
        .iter()
        .flat_map(|&a| space.indices().into_iter().map(move |c| (a, c)))
        .map(|(a, c)| phi_d(&ts, &GlElement::elementary(space, a, c)).unwrap())
        .collect();
    let comm = commutant(ts.dim(), &gl).unwrap();
    let sd = algebra_closure(ts.dim(), &psi_generators(&ts), true).unwrap();
    assert!(subspace_equal(&comm, &sd).unwrap());
}

fn arb_gl(m: usize, n: usize) -> impl Strategy<Value = GlElement> {
    let dim = m + n;
    prop::collection::vec(-3i64..=3, dim * dim).prop_map(move |v| {
        let entries = v.iter().enumerate().map(|(k, &x)| (k / dim, k % dim, Q::from_int(x)));
        GlElement::new(SuperSpace::new(m, n), ExactMatrix::from_entries(dim, dim, entries.collect::<Vec<_>>())).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_is_a_super_homomorphism(x in arb_gl(1, 2), y in arb_gl(1, 2)) {
        let ts = TensorSpace::new(SuperSpace::new(1, 2), 2).unwrap();
        for (_, xh) in x.homogeneous_parts() {
            for (_, yh) in y.homogeneous_parts() {
                let br = xh.supercommutator(&yh).unwrap();
                let (px, py) = (phi_d(&ts, &xh).unwrap(), phi_d(&ts, &yh).unwrap());
                let sign = Q::sign(xh.parity().unwrap().bit() & yh.parity().unwrap().bit() == 1);
                prop_assert_eq!(phi_d(&ts, &br).unwrap(), px.mul(&py).axpy(&-sign, &py.mul(&px)));
            }
        }
    }

    #[test]
    fn phi_commutes_with_psi(x in arb_gl(2, 1)) {
        let ts = TensorSpace::new(SuperSpace::new(2, 1), 3).unwrap();
        let px = phi_d(&ts, &x.even_part()).unwrap();
        for g in psi_generators(&ts) {
            prop_assert!(px.commutator(&g).is_zero());
        }
    }

    #[test]
    fn theta_sigma_invariant(x in arb_gl(1, 2), y in arb_gl(1, 2), seed in 0u64..1000) {
        let (g, gi) = random_even_invertible(SuperSpace::new(1, 2), seed);
        let xs = [x, y];
        let ys: Vec<GlElement> = xs.iter().map(|x| g.mul(x).mul(&gi)).collect();
        for s in Permutation::all(2) {
            prop_assert_eq!(theta_sigma(&s, &xs).unwrap(), theta_sigma(&s, &ys).unwrap());
        }
    }
}

#[test]
fn theta_sigma_orientation_up_to_s4() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (m, n, d) in [(1, 2, 3), (2, 2, 3), (1, 1, 4)] {
        let space = SuperSpace::new(m, n);
        let ts = TensorSpace::new(space, d).unwrap();
        let xs: Vec<GlElement> = (0..d).map(|_| random_gl(space, &mut rng, 3).even_part()).collect();
        for s in Permutation::all(d) {
            assert_eq!(
                theta_sigma(&s, &xs).unwrap(),
                theta_sigma_tensor(&ts, &s, &xs).unwrap(),
                "({m},{n}) sigma = {s}"
            );
        }
    }
    // Generic arguments separate the two 3-cycles, so the identity pins the orientation.
    let space = SuperSpace::new(2, 2);
    let xs: Vec<GlElement> = (0..3).map(|_| random_gl(space, &mut rng, 3).even_part()).collect();
    let c = Permutation::from_one_line(&[2, 3, 1]).unwrap();
    assert_ne!(theta_sigma(&c, &xs).unwrap(), theta_sigma(&c.inverse(), &xs).unwrap());
}

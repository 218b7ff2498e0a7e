use proptest::prelude::*;
use superdual::exactlin::{ExactMatrix, Q};
use superdual::glsuper::{centralizer_combinatorial, GlElement};
use superdual::hecke::{CharVector, HeckeOperatorSet};
use superdual::superindex::{Pyramid, SuperIndex};
use superdual::tensoract::{phi_d, TensorSpace};
use superdual::wtrunc::*;

fn b(v: u16) -> SuperIndex {
    SuperIndex::Barred(v)
}
fn u(v: u16) -> SuperIndex {
    SuperIndex::Unbarred(v)
}

fn alg(m: usize, n: usize, d: i64) -> PbwAlgebra {
    wchi_algebra(Pyramid::new(m, n).unwrap(), d).unwrap()
}

/// Images under the natural representation, an independent model of U(g) → End(V).
fn rep(a: &PbwAlgebra, x: &UeaElement) -> ExactMatrix {
    let s = a.pyramid.space();
    let ts = TensorSpace::new(s, 1).unwrap();
    let mut out = ExactMatrix::zeros(s.dim(), s.dim());
    for (m, c) in &x.terms {
        let mut t = ExactMatrix::identity(s.dim());
        for &k in &m.0 {
            let (i, j) = a.basis[k as usize];
            t = t.mul(&phi_d(&ts, &GlElement::elementary(s, i, j)).unwrap());
        }
        out = out.axpy(c, &t);
    }
    out
}

#[test]
fn straightening_matches_matrix_model() {
    let a = alg(1, 2, 6);
    for &(p, q) in &[(u(1), u(2)), (b(1), u(1)), (u(2), b(1))] {
        for &(r, s) in &[(u(2), u(1)), (u(1), b(1)), (b(1), u(2))] {
            let x = a.generator(p, q);
            let y = a.generator(r, s);
            let xy = a.multiply(&x, &y).unwrap();
            assert_eq!(rep(&a, &xy), rep(&a, &x).mul(&rep(&a, &y)));
        }
    }
    // e_{12} e_{21} = e_{21} e_{12} + e_{11} - e_{22} inside the gl(0|2) block
    let x = a.generator(u(1), u(2));
    let y = a.generator(u(2), u(1));
    let xy = a.multiply(&x, &y).unwrap();
    let mut expect = a.multiply(&y, &x).unwrap();
    expect.axpy(&Q::ONE, &a.generator(u(1), u(1)));
    expect.axpy(&-Q::ONE, &a.generator(u(2), u(2)));
    assert_eq!(xy, expect);
}

#[test]
fn odd_square_is_half_bracket() {
    let a = alg(1, 1, 4);
    let x = a.generator(b(1), u(1));
    let sq = a.multiply(&x, &x).unwrap();
    let br = a.supercommutator(&x, &x).unwrap();
    assert_eq!(sq, br.scale(&Q::new(1, 2)));
    // [e_{1̄1}, e_{1̄1}] = 0 since e_{1̄1}^2 = 0 as a matrix
    assert!(sq.is_zero());
    let y = a.generator(u(1), b(1));
    assert_eq!(rep(&a, &a.multiply(&y, &x).unwrap()), rep(&a, &y).mul(&rep(&a, &x)));
}

#[test]
fn truncation_is_enforced() {
    let a = PbwAlgebra::new(Pyramid::new(1, 1).unwrap(), 1).unwrap();
    let x = a.generator(b(1), b(1));
    assert!(a.multiply(&x, &x).is_err());
}

#[test]
fn projection_examples() {
    let a = alg(1, 2, 4);
    let h = a.generator(u(1), u(1));
    assert_eq!(pr_projection(&a, &h), h);
    let x = a.generator(u(2), u(1));
    let chi = a.chi(a.position(u(2), u(1))).clone();
    assert_eq!(chi, Q::ONE);
    let mut shifted = x.clone();
    shifted.axpy(&-chi, &UeaElement::one());
    assert!(pr_projection(&a, &shifted).is_zero());
    assert_eq!(pr_projection(&a, &x), UeaElement::one());
    let prod = a.multiply(&h, &x).unwrap();
    assert_eq!(pr_projection(&a, &pr_projection(&a, &prod)), pr_projection(&a, &prod));
}

#[test]
fn hilbert_series_matches() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let a = alg(m, n, 6);
        let w = find_wchi(&a, 6);
        let h = wchi_hilbert_check(&a, &w).unwrap();
        assert!(h.matches, "({m},{n}): {:?} vs {:?}", h.found, h.expected);
        assert_eq!(w.dims[0], 1);
        let ge = centralizer_combinatorial(m, n).unwrap();
        let deg2 = ge.kazhdan_degrees.iter().filter(|&&k| k == 2).count();
        assert_eq!(w.dims[2], 1 + deg2);
        for x in &w.elements {
            assert!(is_wchi_element(&a, x));
        }
    }
    assert_eq!(find_wchi(&alg(1, 2, 6), 6).dims, vec![1, 1, 4, 4, 11, 11, 24]);
}

#[test]
fn solutions_closed_under_products() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let a = alg(m, n, 6);
        let w = find_wchi(&a, 6);
        assert!(closure_failures(&a, &w).unwrap().is_empty(), "({m},{n})");
    }
}

#[test]
fn phi_dc_images_commute_with_hecke() {
    let p = Pyramid::new(1, 2).unwrap();
    let a = alg(1, 2, 4);
    let ts = TensorSpace::new(p.space(), 2).unwrap();
    for c in ["0,0", "1,2"] {
        let c = CharVector::parse(c, 2).unwrap();
        let set = HeckeOperatorSet::new(p, 2, c.clone()).unwrap();
        for x in &find_wchi(&a, 4).elements {
            let img = phi_dc_image(&a, &ts, &c, x).unwrap();
            for g in set.x_ops.iter().chain(&set.s_ops) {
                assert!(img.commutator(&g.op).is_zero(), "{x}");
            }
        }
    }
    let c = CharVector::zero(2);
    assert_eq!(phi_dc_image(&a, &ts, &c, &UeaElement::one()).unwrap(), ExactMatrix::identity(9));
    let h = a.generator(u(1), u(1));
    assert_eq!(
        phi_dc_image(&a, &ts, &c, &h).unwrap(),
        phi_d(&ts, &GlElement::elementary(p.space(), u(1), u(1))).unwrap()
    );
    assert!(phi_dc_image(&a, &ts, &c, &a.generator(u(2), u(1))).is_err());
}

#[test]
fn hilbert_series_small() {
    // one even generator of weight 2 and one odd of weight 2
    assert_eq!(hilbert_cumulative(&[(2, false), (2, true)], 4), vec![1, 1, 3, 3, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_is_associative_and_faithful(i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let a = alg(1, 2, 6);
        let g = |t: usize| UeaElement::monomial(PbwMonomial(vec![t as u16]), Q::ONE);
        let (x, y, z) = (g(i), g(j), g(k));
        let left = a.multiply(&a.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(rep(&a, &left), rep(&a, &x).mul(&rep(&a, &y)).mul(&rep(&a, &z)));
    }

    #[test]
    fn phi_dc_is_multiplicative(i in 0usize..6, j in 0usize..6, c1 in -3i64..3, c2 in -3i64..3) {
        let p = Pyramid::new(1, 2).unwrap();
        let a = alg(1, 2, 6);
        let ts = TensorSpace::new(p.space(), 2).unwrap();
        let c = CharVector::new(vec![Q::from_int(c1), Q::from_int(c2)], 2).unwrap();
        let g = |t: usize| UeaElement::monomial(PbwMonomial(vec![t as u16]), Q::ONE);
        let prod = a.multiply(&g(i), &g(j)).unwrap();
        let lhs = phi_dc_image(&a, &ts, &c, &prod).unwrap();
        let rhs = phi_dc_image(&a, &ts, &c, &g(i)).unwrap().mul(&phi_dc_image(&a, &ts, &c, &g(j)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

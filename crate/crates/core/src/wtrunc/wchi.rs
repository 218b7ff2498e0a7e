use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::uea::{PbwAlgebra, PbwMonomial, Straightener, UeaElement};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_of_rows, ExactMatrix, SparseVec, Q};
use crate::glsuper::{centralizer_combinatorial, GlElement};
use crate::hecke::CharVector;
use crate::tensoract::{phi_d, TensorSpace};

/// Projection U(g) → U(p) along I_χ: every m_neg factor (all on the right in
/// PBW order) is replaced by its χ value.
pub fn pr_projection(alg: &PbwAlgebra, u: &UeaElement) -> UeaElement {
    let mut out = UeaElement::zero();
    for (m, c) in &u.terms {
        let split = m.0.iter().position(|&k| !alg.is_p(k)).unwrap_or(m.0.len());
        let mut v = c.clone();
        for &k in &m.0[split..] {
            v *= alg.chi(k);
        }
        out.add_term(PbwMonomial(m.0[..split].to_vec()), &v);
    }
    out
}

/// p-monomials of Kazhdan degree at most `bound`, sorted by (Kazhdan degree, monomial).
pub fn p_monomials(alg: &PbwAlgebra, bound: i64) -> Vec<PbwMonomial> {
    fn grow(alg: &PbwAlgebra, bound: i64, start: u16, cur: &mut Vec<u16>, deg: i64, out: &mut Vec<PbwMonomial>) {
        for k in start..alg.n_p as u16 {
            let w = alg.kazhdan_degree(&PbwMonomial(vec![k]));
            if deg + w > bound {
                continue;
            }
            cur.push(k);
            out.push(PbwMonomial(cur.clone()));
            let next = if alg.parity(k) == 1 { k + 1 } else { k };
            grow(alg, bound, next, cur, deg + w, out);
            cur.pop();
        }
    }
    let mut out = vec![PbwMonomial::one()];
    grow(alg, bound, 0, &mut Vec::new(), 0, &mut out);
    out.sort_by_key(|m| (alg.kazhdan_degree(m), m.clone()));
    out
}

/// Truncated W_χ: a basis filtered by Kazhdan degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WchiBasisTrunc {
    pub max_kazhdan: i64,
    pub elements: Vec<UeaElement>,
    /// Kazhdan degree of each element (that of its top monomial).
    pub kazhdan_degrees: Vec<i64>,
    /// `dims[k]` = dimension of the solutions of Kazhdan degree at most `k`.
    pub dims: Vec<usize>,
}

/// The PBW algebra sized for Kazhdan degree `max_kazhdan`. Every p factor has
/// Kazhdan degree at least 2, so ordinary degree `max_kazhdan` is never binding.
pub fn wchi_algebra(pyramid: crate::superindex::Pyramid, max_kazhdan: i64) -> Result<PbwAlgebra> {
    let alg = PbwAlgebra::new(pyramid, max_kazhdan.max(0) as usize + 1)?;
    let min_w = (0..alg.n_p as u16).map(|k| alg.kazhdan_degree(&PbwMonomial(vec![k]))).min().unwrap_or(2);
    if min_w < 2 {
        return Err(Error::Convention(format!("p contains a factor of Kazhdan degree {min_w}")));
    }
    Ok(alg)
}

/// Solves `Pr([x, u]) = 0` for all `x` in m_neg over p-monomials of Kazhdan degree ≤ D.
pub fn find_wchi(alg: &PbwAlgebra, max_kazhdan: i64) -> WchiBasisTrunc {
    let monos = p_monomials(alg, max_kazhdan);
    let m_neg: Vec<u16> = (alg.n_p as u16..alg.len() as u16).collect();
    // One block of equations per m_neg element, keyed by the p-monomial of Pr([x, u]).
    let blocks: Vec<Vec<(PbwMonomial, usize, Q)>> = m_neg
        .par_iter()
        .map(|&x| {
            let mut st = Straightener::new(alg);
            let xe = UeaElement::monomial(PbwMonomial(vec![x]), Q::ONE);
            let mut out = Vec::new();
            for (j, mono) in monos.iter().enumerate() {
                let u = UeaElement::monomial(mono.clone(), Q::ONE);
                let pr = pr_projection(alg, &st.supercommutator(&xe, &u));
                out.extend(pr.terms.into_iter().map(|(q, c)| (q, j, c)));
            }
            out
        })
        .collect();
    let mut rows: std::collections::BTreeMap<(usize, PbwMonomial), Vec<(usize, Q)>> = Default::default();
    for (b, block) in blocks.into_iter().enumerate() {
        for (q, j, c) in block {
            rows.entry((b, q)).or_default().push((j, c));
        }
    }
    let kernel = kernel_of_rows(monos.len(), rows.into_values().map(SparseVec::from_entries));
    let kdeg: Vec<i64> = monos.iter().map(|m| alg.kazhdan_degree(m)).collect();
    let mut elements = Vec::new();
    let mut kazhdan_degrees = Vec::new();
    for v in kernel.basis() {
        let mut u = UeaElement::zero();
        for (j, c) in v.iter() {
            u.add_term(monos[*j].clone(), c);
        }
        kazhdan_degrees.push(kdeg[v.max_index().expect("kernel vectors are nonzero")]);
        elements.push(u);
    }
    let dims = (0..=max_kazhdan.max(0)).map(|k| kazhdan_degrees.iter().filter(|&&d| d <= k).count()).collect();
    WchiBasisTrunc { max_kazhdan, elements, kazhdan_degrees, dims }
}

/// Whether `Pr([x, u]) = 0` for every m_neg basis element `x`.
pub fn is_wchi_element(alg: &PbwAlgebra, u: &UeaElement) -> bool {
    let mut st = Straightener::new(alg);
    (alg.n_p as u16..alg.len() as u16).all(|x| {
        let xe = UeaElement::monomial(PbwMonomial(vec![x]), Q::ONE);
        pr_projection(alg, &st.supercommutator(&xe, u)).is_zero()
    })
}

/// Cumulative coefficients of `Π_even 1/(1 - t^{w}) · Π_odd (1 + t^{w})` up to `t^D`,
/// with `w` the Kazhdan degrees of a g_e basis.
pub fn hilbert_cumulative(generators: &[(i64, bool)], max_kazhdan: i64) -> Vec<u64> {
    let len = max_kazhdan.max(0) as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    for &(w, odd) in generators {
        let w = w as usize;
        if w == 0 || w >= len {
            continue;
        }
        if odd {
            for k in (w..len).rev() {
                series[k] += series[k - w];
            }
        } else {
            for k in w..len {
                series[k] += series[k - w];
            }
        }
    }
    series
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Per-degree comparison of find_wchi against the S(g_e) Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCheck {
    pub found: Vec<usize>,
    pub expected: Vec<u64>,
    pub matches: bool,
}

pub fn wchi_hilbert_check(alg: &PbwAlgebra, found: &WchiBasisTrunc) -> Result<HilbertCheck> {
    let basis = centralizer_combinatorial(alg.pyramid.m, alg.pyramid.n)?;
    let gens: Vec<(i64, bool)> =
        basis.elements.iter().zip(&basis.kazhdan_degrees).map(|((t, _), &w)| (w, t.parity().bit() == 1)).collect();
    let expected = hilbert_cumulative(&gens, found.max_kazhdan);
    let matches = found.dims.len() == expected.len() && found.dims.iter().zip(&expected).all(|(a, b)| *a as u64 == *b);
    Ok(HilbertCheck { found: found.dims.clone(), expected, matches })
}

/// Φ_{d,c}(e_{a,b}) = φ_d(e_{a,b}) + δ_{ab} (-1)^{|a|} c_{col(a)} for p generators.
pub fn phi_dc_generator(alg: &PbwAlgebra, ts: &TensorSpace, c: &CharVector, k: u16) -> Result<ExactMatrix> {
    if !alg.is_p(k) {
        return Err(Error::InvalidParams("Φ_{d,c} is only defined on U(p)".into()));
    }
    let (a, b) = alg.basis[k as usize];
    let mut out = phi_d(ts, &GlElement::elementary(ts.space, a, b))?;
    if a == b {
        let shift = Q::sign(a.bit() == 1) * c.at_col(alg.pyramid.col(a));
        out = out.axpy(&shift, &ExactMatrix::identity(ts.dim()));
    }
    Ok(out)
}

/// Φ_{d,c}(u) for `u` in U(p), multiplicative on PBW monomials.
pub fn phi_dc_image(alg: &PbwAlgebra, ts: &TensorSpace, c: &CharVector, u: &UeaElement) -> Result<ExactMatrix> {
    let gens: Vec<Option<ExactMatrix>> =
        (0..alg.len() as u16).map(|k| if alg.is_p(k) { phi_dc_generator(alg, ts, c, k).ok() } else { None }).collect();
    let mut out = ExactMatrix::zeros(ts.dim(), ts.dim());
    for (m, coeff) in &u.terms {
        let mut t = ExactMatrix::identity(ts.dim());
        for &k in &m.0 {
            let g = gens[k as usize]
                .as_ref()
                .ok_or_else(|| Error::InvalidParams("Φ_{d,c} is only defined on U(p)".into()))?;
            t = t.mul(g);
        }
        out = out.axpy(coeff, &t);
    }
    Ok(out)
}

/// Products `u·v` of basis solutions with `deg u + deg v ≤ D` that fail to be solutions.
pub fn closure_failures(alg: &PbwAlgebra, found: &WchiBasisTrunc) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for i in 0..found.elements.len() {
        for j in 0..found.elements.len() {
            if found.kazhdan_degrees[i] + found.kazhdan_degrees[j] <= found.max_kazhdan {
                pairs.push((i, j));
            }
        }
    }
    let products: Vec<Result<((usize, usize), bool)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = alg.multiply(&found.elements[i], &found.elements[j])?;
            Ok(((i, j), is_wchi_element(alg, &p)))
        })
        .collect();
    let mut bad = Vec::new();
    for r in products {
        let (ij, ok) = r?;
        if !ok {
            bad.push(ij);
        }
    }
    Ok(bad)
}

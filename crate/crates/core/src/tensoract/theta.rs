use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{super_tensor, TensorOperator, TensorSpace};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Q};
use crate::superindex::{
    add_parities, alpha_unchecked, nu, orbit_representatives, permute, triple_matrix, tuples, Permutation, Pyramid,
    SuperIndex, TripleIndex,
};

/// `ξ_{κ_1} ⊗ … ⊗ ξ_{κ_d}` for a tuple of triples.
pub fn xi_tensor(ts: &TensorSpace, pyramid: &Pyramid, kappa: &[TripleIndex]) -> ExactMatrix {
    let mats: Vec<ExactMatrix> = kappa.iter().map(|t| triple_matrix(pyramid, t)).collect();
    let factors: Vec<(u8, &ExactMatrix)> = kappa.iter().zip(&mats).map(|(t, m)| (t.parity().bit(), m)).collect();
    super_tensor(ts, &factors)
}

fn parities_of(kappa: &[TripleIndex]) -> Vec<u8> {
    kappa.iter().map(|t| t.parity().bit()).collect()
}

/// `Θ_κ = α(δ,δ) Σ_{σ ∈ S_d} ν(δ,σ) ξ_{κ.σ}` with δ the parity vector of κ.
pub fn theta_operator_triples(ts: &TensorSpace, pyramid: &Pyramid, kappa: &[TripleIndex]) -> ExactMatrix {
    let delta = parities_of(kappa);
    let mut cache: HashMap<Vec<TripleIndex>, ExactMatrix> = HashMap::new();
    let mut acc = ExactMatrix::zeros(ts.dim(), ts.dim());
    for sigma in Permutation::all(ts.d) {
        let key = permute(kappa, &sigma);
        let xi = cache.entry(key.clone()).or_insert_with(|| xi_tensor(ts, pyramid, &key));
        acc = acc.axpy(&Q::from_int(nu(&delta, &sigma) as i64), xi);
    }
    acc.scale(&Q::from_int(alpha_unchecked(&delta, &delta) as i64))
}

/// `Θ_{i,j}`; every `(i_k, j_k)` must map into K.
pub fn theta_operator(
    ts: &TensorSpace,
    pyramid: &Pyramid,
    k: &[TripleIndex],
    i: &[SuperIndex],
    j: &[SuperIndex],
) -> Result<TensorOperator> {
    if i.len() != ts.d || j.len() != ts.d {
        return Err(Error::InvalidParams(format!("multi-indices must have length {}", ts.d)));
    }
    let kappa: Vec<TripleIndex> = i.iter().zip(j).map(|(&a, &b)| pyramid.upsilon(a, b)).collect();
    if let Some(bad) = kappa.iter().position(|t| !k.contains(t)) {
        return Err(Error::InvalidParams(format!(
            "pair ({:?}, {:?}) in slot {} is not admissible",
            i[bad],
            j[bad],
            bad + 1
        )));
    }
    Ok(TensorOperator::with_degree(theta_operator_triples(ts, pyramid, &kappa), pyramid, ts))
}

/// One Θ operator per S_d-orbit on K^d.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub representative: Vec<TripleIndex>,
    pub orbit_size: usize,
    pub operator: ExactMatrix,
}

/// Θ over orbit representatives of K^d, zero operators included.
pub fn theta_basis(ts: &TensorSpace, pyramid: &Pyramid, k: &[TripleIndex]) -> Vec<ThetaEntry> {
    orbit_representatives(tuples(k, ts.d))
        .into_iter()
        .map(|o| ThetaEntry {
            operator: theta_operator_triples(ts, pyramid, &o.representative),
            representative: o.representative,
            orbit_size: o.size,
        })
        .collect()
}

/// One summand `sign · v_s ⊗ x_monomial` of the comodule map on `v_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleTerm {
    pub s: Vec<SuperIndex>,
    pub monomial: Vec<TripleIndex>,
    pub sign: i32,
}

/// `Δ^(d)(v_t) = Σ_s (-1)^{|ε_s|(|ε_s|+|ε_t|)} α(ε_s+ε_t, ε_s) v_s ⊗ x_{Υ(s,t)}`,
/// over all `s` with every `υ(s_q, t_q)` in K.
pub fn comodule_coeffs(pyramid: &Pyramid, k: &[TripleIndex], t: &[SuperIndex]) -> Vec<ComoduleTerm> {
    let idx = pyramid.space().indices();
    let eps_t: Vec<u8> = t.iter().map(|i| i.bit()).collect();
    tuples(&idx, t.len())
        .into_iter()
        .filter_map(|s| {
            let monomial: Vec<TripleIndex> = s.iter().zip(t).map(|(&a, &b)| pyramid.upsilon(a, b)).collect();
            if !monomial.iter().all(|m| k.contains(m)) {
                return None;
            }
            let eps_s: Vec<u8> = s.iter().map(|i| i.bit()).collect();
            let delta = add_parities(&eps_s, &eps_t);
            let ws = eps_s.iter().fold(0, |a, b| a ^ b);
            let wd = delta.iter().fold(0, |a, b| a ^ b);
            let sign = if ws & wd == 1 { -1 } else { 1 } * alpha_unchecked(&delta, &eps_s);
            Some(ComoduleTerm { s, monomial, sign })
        })
        .collect()
}

/// The operator `v_t ↦ Σ sign · ⟨ξ_κ, x_{Υ(s,t)}⟩ v_s` obtained by pairing the
/// comodule coefficients with the dual element of the monomial `x_κ`, where
/// `⟨ξ_κ, x_{κ.σ}⟩` collects `ν(δ, σ)` over all such σ.
pub fn comodule_operator(ts: &TensorSpace, pyramid: &Pyramid, k: &[TripleIndex], kappa: &[TripleIndex]) -> ExactMatrix {
    let delta = parities_of(kappa);
    let mut pairing: HashMap<Vec<TripleIndex>, i64> = HashMap::new();
    for sigma in Permutation::all(ts.d) {
        *pairing.entry(permute(kappa, &sigma)).or_default() += nu(&delta, &sigma) as i64;
    }
    let mut entries = Vec::new();
    for col in 0..ts.dim() {
        let t = ts.multi_index(col);
        for term in comodule_coeffs(pyramid, k, &t) {
            if let Some(&p) = pairing.get(&term.monomial) {
                if p != 0 {
                    entries.push((ts.index_of(&term.s), col, Q::from_int(p * term.sign as i64)));
                }
            }
        }
    }
    ExactMatrix::from_entries(ts.dim(), ts.dim(), entries)
}

/// Coordinate `a_{i,j}` of `E = Σ a_{i,j} e_{i,j}` in the super tensor basis
/// `e_{i,j} = e_{i_1 j_1} ⊗ … ⊗ e_{i_d j_d}`.
pub fn elementary_coordinate(ts: &TensorSpace, e: &ExactMatrix, row: usize, col: usize) -> Q {
    let v = e.get(row, col);
    if v.is_zero() {
        return v;
    }
    let delta = add_parities(ts.parities(row), ts.parities(col));
    if alpha_unchecked(&delta, ts.parities(col)) < 0 {
        -v
    } else {
        v
    }
}

/// Outcome of the four coefficient axioms over a list of operators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// `a_{i,j} = 0` whenever some `col(i_k) > col(j_k)`.
    pub vanishing: bool,
    /// `a_{i,j} = ν(ε_i+ε_j, σ) a_{i.σ,j.σ}`.
    pub nu_symmetry: bool,
    /// Constant on fibres of Υ and zero off υ⁻¹(K)^d.
    pub fiber_constancy: bool,
    /// `a_{i,j} = ν(ε_i+ε_j, σ) a_{s,t}` whenever `Υ(i,j).σ = Υ(s,t)`.
    pub orbit_relation: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.vanishing && self.nu_symmetry && self.fiber_constancy && self.orbit_relation
    }
}

pub fn check_coefficient_axioms(
    ts: &TensorSpace,
    pyramid: &Pyramid,
    k: &[TripleIndex],
    ops: &[ExactMatrix],
) -> AxiomReport {
    let n = ts.dim();
    let perms = Permutation::all(ts.d);
    let col_of = |k: usize| -> Vec<usize> { ts.multi_index(k).iter().map(|&i| pyramid.col(i)).collect() };
    let cols: Vec<Vec<usize>> = (0..n).map(col_of).collect();
    let ups = |r: usize, c: usize| -> Vec<TripleIndex> {
        ts.multi_index(r).iter().zip(ts.multi_index(c)).map(|(&a, b)| pyramid.upsilon(a, b)).collect()
    };
    let permuted = |r: usize, s: &Permutation| ts.encode(&permute(ts.slots(r), s));
    // A fixed pair in every Υ-fibre.
    let mut fiber_rep: HashMap<Vec<TripleIndex>, (usize, usize)> = HashMap::new();
    for r in 0..n {
        for c in 0..n {
            fiber_rep.entry(ups(r, c)).or_insert((r, c));
        }
    }
    let mut rep = AxiomReport { vanishing: true, nu_symmetry: true, fiber_constancy: true, orbit_relation: true };
    for e in ops {
        let a = |r: usize, c: usize| elementary_coordinate(ts, e, r, c);
        let mut fiber_val: HashMap<Vec<TripleIndex>, Q> = HashMap::new();
        for r in 0..n {
            for c in 0..n {
                let v = a(r, c);
                if (0..ts.d).any(|q| cols[r][q] > cols[c][q]) && !v.is_zero() {
                    rep.vanishing = false;
                }
                let delta = add_parities(ts.parities(r), ts.parities(c));
                for s in &perms {
                    let sign = Q::from_int(nu(&delta, s) as i64);
                    let (r2, c2) = (permuted(r, s), permuted(c, s));
                    if v != &sign * &a(r2, c2) {
                        rep.nu_symmetry = false;
                    }
                }
                let key = ups(r, c);
                if key.iter().all(|t| k.contains(t)) {
                    match fiber_val.get(&key) {
                        Some(w) if *w != v => rep.fiber_constancy = false,
                        Some(_) => {}
                        None => {
                            fiber_val.insert(key.clone(), v.clone());
                        }
                    }
                    for s in &perms {
                        let target = permute(&key, s);
                        if let Some(&(rs, cs)) = fiber_rep.get(&target) {
                            let sign = Q::from_int(nu(&delta, s) as i64);
                            if v != &sign * &a(rs, cs) {
                                rep.orbit_relation = false;
                            }
                        }
                    }
                } else if !v.is_zero() {
                    rep.fiber_constancy = false;
                }
            }
        }
    }
    rep
}

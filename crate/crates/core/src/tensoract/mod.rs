//! Operators on V^{⊗d}: the super action φ_d, the signed symmetric group
//! action ψ_d, nilpotent insertions, Θ operators, comodule coefficients and
//! the supertrace invariants θ_σ.

mod invariants;
mod theta;

pub use invariants::{random_even_invertible, random_gl, theta_sigma, theta_sigma_tensor};
pub use theta::{
    check_coefficient_axioms, comodule_coeffs, comodule_operator, elementary_coordinate, theta_basis, theta_operator,
    theta_operator_triples, xi_tensor, AxiomReport, ComoduleTerm, ThetaEntry,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Q};
use crate::glsuper::{GlElement, NilpotentData};
use crate::superindex::{nu, Parity, Permutation, Pyramid, SuperIndex, SuperSpace};

/// Basis bookkeeping for V^{⊗d}: lexicographic order, first slot most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub space: SuperSpace,
    pub d: usize,
    dim: usize,
    slots: Vec<Vec<u16>>,
    bits: Vec<Vec<u8>>,
}

impl TensorSpace {
    pub fn new(space: SuperSpace, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("tensor power d must be at least 1".into()));
        }
        let base = space.dim();
        if base == 0 {
            return Err(Error::InvalidParams("V must be nonzero".into()));
        }
        let dim = base
            .checked_pow(d as u32)
            .filter(|&x| x <= 1 << 20)
            .ok_or(Error::CapExceeded { estimate: usize::MAX, cap: 1 << 20 })?;
        let mut slots = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut digits = vec![0u16; d];
            let mut r = k;
            for s in (0..d).rev() {
                digits[s] = (r % base) as u16;
                r /= base;
            }
            slots.push(digits);
        }
        let bits = slots.iter().map(|t| t.iter().map(|&p| space.bit_at(p as usize)).collect()).collect();
        Ok(TensorSpace { space, d, dim, slots, bits })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis positions in V of each slot.
    pub fn slots(&self, k: usize) -> &[u16] {
        &self.slots[k]
    }

    /// Parity vector ε of basis vector `k`.
    pub fn parities(&self, k: usize) -> &[u8] {
        &self.bits[k]
    }

    pub fn total_parity(&self, k: usize) -> u8 {
        self.bits[k].iter().fold(0, |a, b| a ^ b)
    }

    pub fn encode(&self, slots: &[u16]) -> usize {
        debug_assert_eq!(slots.len(), self.d);
        slots.iter().fold(0, |acc, &p| acc * self.space.dim() + p as usize)
    }

    pub fn index_of(&self, multi: &[SuperIndex]) -> usize {
        let slots: Vec<u16> = multi.iter().map(|&i| self.space.position(i) as u16).collect();
        self.encode(&slots)
    }

    pub fn multi_index(&self, k: usize) -> Vec<SuperIndex> {
        self.slots[k].iter().map(|&p| self.space.index_at(p as usize)).collect()
    }

    /// V-grading of a basis tensor: `Σ (n - col(i_s))`.
    pub fn v_degree(&self, pyramid: &Pyramid, k: usize) -> i64 {
        self.slots[k].iter().map(|&p| pyramid.v_degree(self.space.index_at(p as usize))).sum()
    }
}

/// Exact operator on V^{⊗d} with an optional filtration degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOperator {
    pub op: ExactMatrix,
    pub filtration_degree: Option<i64>,
}

impl TensorOperator {
    pub fn new(op: ExactMatrix) -> Self {
        TensorOperator { op, filtration_degree: None }
    }

    pub fn with_degree(op: ExactMatrix, pyramid: &Pyramid, ts: &TensorSpace) -> Self {
        let filtration_degree = filtration_degree(&op, pyramid, ts);
        TensorOperator { op, filtration_degree }
    }
}

/// Largest `deg(target) - deg(source)` over nonzero entries; `None` for zero.
pub fn filtration_degree(op: &ExactMatrix, pyramid: &Pyramid, ts: &TensorSpace) -> Option<i64> {
    let deg: Vec<i64> = (0..ts.dim()).map(|k| ts.v_degree(pyramid, k)).collect();
    op.entries().map(|(i, j, _)| deg[i] - deg[j]).max()
}

/// Component of `op` shifting the V-grading by exactly `r`.
pub fn graded_component(op: &ExactMatrix, pyramid: &Pyramid, ts: &TensorSpace, r: i64) -> ExactMatrix {
    let deg: Vec<i64> = (0..ts.dim()).map(|k| ts.v_degree(pyramid, k)).collect();
    ExactMatrix::from_entries(
        op.rows(),
        op.cols(),
        op.entries().filter(|(i, j, _)| deg[*i] - deg[*j] == r).map(|(i, j, v)| (i, j, v.clone())).collect::<Vec<_>>(),
    )
}

fn phi_homogeneous(ts: &TensorSpace, x: &ExactMatrix, odd: bool) -> ExactMatrix {
    let mut entries = Vec::new();
    for k in 0..ts.dim() {
        let slots = ts.slots(k);
        let bits = ts.parities(k);
        let mut before = 0u8;
        for s in 0..ts.d {
            let sign = Q::sign(odd && before == 1);
            for (r, v) in x.column(slots[s] as usize).iter() {
                let mut t = slots.to_vec();
                t[s] = *r as u16;
                entries.push((ts.encode(&t), k, &sign * v));
            }
            before ^= bits[s];
        }
    }
    ExactMatrix::from_entries(ts.dim(), ts.dim(), entries)
}

/// φ_d(X): `X` acting on each slot with the sign `(-1)^{|X|(|v_1|+…+|v_{s-1}|)}`.
/// Inhomogeneous elements act through their homogeneous parts.
pub fn phi_d(ts: &TensorSpace, x: &GlElement) -> Result<ExactMatrix> {
    if x.space != ts.space {
        return Err(Error::Shape("element and tensor space disagree on (m|n)".into()));
    }
    let mut out = ExactMatrix::zeros(ts.dim(), ts.dim());
    for (p, part) in x.homogeneous_parts() {
        out = out.add(&phi_homogeneous(ts, &part.matrix, p == Parity::Odd));
    }
    Ok(out)
}

/// ψ_d(σ): `v_i ↦ ν(ε_i, σ) v_{i.σ}`. As linear maps `ψ(στ) = ψ(τ)ψ(σ)`,
/// the matrix form of a right action.
pub fn psi_d(ts: &TensorSpace, sigma: &Permutation) -> Result<ExactMatrix> {
    if sigma.degree() != ts.d {
        return Err(Error::InvalidParams(format!("permutation of degree {} on V^⊗{}", sigma.degree(), ts.d)));
    }
    let entries = (0..ts.dim()).map(|k| {
        let t = crate::superindex::permute(ts.slots(k), sigma);
        (ts.encode(&t), k, Q::from_int(nu(ts.parities(k), sigma) as i64))
    });
    Ok(ExactMatrix::from_entries(ts.dim(), ts.dim(), entries.collect::<Vec<_>>()))
}

/// ψ_d of the adjacent transpositions `s_1, …, s_{d-1}`.
pub fn psi_generators(ts: &TensorSpace) -> Vec<ExactMatrix> {
    (1..ts.d).map(|j| psi_d(ts, &Permutation::transposition(ts.d, j)).expect("degree matches")).collect()
}

/// `A` placed in slot `i` (1-based) with identities elsewhere, no signs (A even).
pub fn slot_insertion(ts: &TensorSpace, i: usize, a: &ExactMatrix) -> Result<ExactMatrix> {
    if i == 0 || i > ts.d {
        return Err(Error::InvalidParams(format!("slot {i} outside 1..={}", ts.d)));
    }
    let s = i - 1;
    let mut entries = Vec::new();
    for k in 0..ts.dim() {
        let slots = ts.slots(k);
        for (r, v) in a.column(slots[s] as usize).iter() {
            let mut t = slots.to_vec();
            t[s] = *r as u16;
            entries.push((ts.encode(&t), k, v.clone()));
        }
    }
    Ok(ExactMatrix::from_entries(ts.dim(), ts.dim(), entries))
}

/// `1^{⊗(i-1)} ⊗ e ⊗ 1^{⊗(d-i)}`.
pub fn poly_insertion(ts: &TensorSpace, i: usize, e: &NilpotentData) -> Result<ExactMatrix> {
    if e.space() != ts.space {
        return Err(Error::Shape("nilpotent and tensor space disagree on (m|n)".into()));
    }
    slot_insertion(ts, i, e.matrix())
}

/// Super tensor product of homogeneous operators:
/// `(X_1⊗…⊗X_d) w = α((|X_k|), (|w_k|)) X_1 w_1 ⊗ … ⊗ X_d w_d`.
pub fn super_tensor(ts: &TensorSpace, factors: &[(u8, &ExactMatrix)]) -> ExactMatrix {
    assert_eq!(factors.len(), ts.d, "need one factor per slot");
    let xpar: Vec<u8> = factors.iter().map(|f| f.0).collect();
    let mut entries = Vec::new();
    for k in 0..ts.dim() {
        let slots = ts.slots(k);
        let sign = Q::from_int(crate::superindex::alpha_unchecked(&xpar, ts.parities(k)) as i64);
        let mut partial: Vec<(Vec<u16>, Q)> = vec![(Vec::with_capacity(ts.d), sign)];
        for (s, (_, x)) in factors.iter().enumerate() {
            let col = x.column(slots[s] as usize);
            let mut next = Vec::with_capacity(partial.len() * col.nnz());
            for (t, c) in &partial {
                for (r, v) in col.iter() {
                    let mut t2 = t.clone();
                    t2.push(*r as u16);
                    next.push((t2, c * v));
                }
            }
            partial = next;
        }
        for (t, c) in partial {
            entries.push((ts.encode(&t), k, c));
        }
    }
    ExactMatrix::from_entries(ts.dim(), ts.dim(), entries)
}

/// The graded swap of slots `r < s` (1-based) as a linear map.
pub fn graded_transposition(ts: &TensorSpace, r: usize, s: usize) -> Result<ExactMatrix> {
    if !(1 <= r && r < s && s <= ts.d) {
        return Err(Error::InvalidParams(format!("need 1 <= r < s <= {}, got ({r},{s})", ts.d)));
    }
    psi_d(ts, &Permutation::swap(ts.d, r, s))
}

//! Degenerate affine Hecke operators on the twisted space V_c^{⊗d}.
//!
//! All operators here come from a right action. They are stored as the linear
//! maps `v ↦ v.g`, so a word `ab` in the algebra is the matrix product `L_b L_a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{minimal_polynomial, ExactMatrix, Polynomial, Q};
use crate::glsuper::{parity_operator, regular_nilpotent};
use crate::superindex::Pyramid;
use crate::tensoract::{graded_transposition, psi_d, slot_insertion, super_tensor, TensorOperator, TensorSpace};

/// The scalars `c = (c_1, …, c_n)`, one per column of the pyramid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharVector(Vec<Q>);

impl CharVector {
    pub fn new(c: Vec<Q>, n: usize) -> Result<Self> {
        if c.len() != n {
            return Err(Error::InvalidParams(format!("c needs {n} entries, got {}", c.len())));
        }
        Ok(CharVector(c))
    }

    pub fn zero(n: usize) -> Self {
        CharVector(vec![Q::ZERO; n])
    }

    /// Parses a comma separated list such as `1/2,3` and checks the length.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let c = s
            .split(',')
            .map(|t| t.trim().parse::<Q>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("char vector {s:?}: {e}")))?;
        Self::new(c, n)
    }

    /// `c_k` for a 1-based column `k`.
    pub fn at_col(&self, k: usize) -> &Q {
        &self.0[k - 1]
    }

    pub fn values(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CharVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CharVector {
    type Err = Error;

    /// Length is not checked here; use [`CharVector::parse`] for that.
    fn from_str(s: &str) -> Result<Self> {
        let c: Vec<Q> = s
            .split(',')
            .map(|t| t.trim().parse::<Q>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("char vector {s:?}: {e}")))?;
        let n = c.len();
        Self::new(c, n)
    }
}

/// Sign attached to the transposition terms of the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// Graded transposition `v ↦ v.(t s)`, including the ν sign.
    Corrected,
    /// `(-1)^{|i_t|}` times the plain index swap, as printed.
    Literal,
}

/// `Ω^{[r,s]} = Σ_{i,j} (-1)^{|j|} 1 ⊗ … ⊗ e_{i,j} ⊗ … ⊗ e_{j,i} ⊗ … ⊗ 1`, slots `r < s` 1-based.
pub fn omega_op(ts: &TensorSpace, r: usize, s: usize) -> Result<ExactMatrix> {
    if !(1 <= r && r < s && s <= ts.d) {
        return Err(Error::InvalidParams(format!("need 1 <= r < s <= {}, got ({r},{s})", ts.d)));
    }
    let dim = ts.space.dim();
    let id = ExactMatrix::identity(dim);
    let mut out = ExactMatrix::zeros(ts.dim(), ts.dim());
    for i in 0..dim {
        for j in 0..dim {
            let eij = ExactMatrix::unit(dim, i, j);
            let eji = ExactMatrix::unit(dim, j, i);
            let par = ts.space.bit_at(i) ^ ts.space.bit_at(j);
            let factors: Vec<(u8, &ExactMatrix)> = (1..=ts.d)
                .map(|k| {
                    if k == r {
                        (par, &eij)
                    } else if k == s {
                        (par, &eji)
                    } else {
                        (0, &id)
                    }
                })
                .collect();
            out = out.axpy(&Q::sign(ts.space.bit_at(j) == 1), &super_tensor(ts, &factors));
        }
    }
    Ok(out)
}

fn swap_slots(slots: &[u16], a: usize, b: usize) -> Vec<u16> {
    let mut t = slots.to_vec();
    t.swap(a, b);
    t
}

/// `x_s` from the closed formula, entry by entry:
/// `v_i x_s = c_{col(i_s)} v_i + (-1)^{|i_s|} v_{i-ı_s} + Σ_{t<s, col(i_t) ≥ col(i_s)} v_i.(t s)
///  - Σ_{t>s, col(i_t) < col(i_s)} v_i.(s t)`.
pub fn hecke_x_closed(
    pyramid: &Pyramid,
    ts: &TensorSpace,
    s: usize,
    c: &CharVector,
    convention: SignConvention,
) -> Result<ExactMatrix> {
    check_setup(pyramid, ts, c)?;
    if s == 0 || s > ts.d {
        return Err(Error::InvalidParams(format!("x_{s} outside 1..={}", ts.d)));
    }
    let s0 = s - 1;
    let sp = ts.space;
    let mut entries = Vec::new();
    for k in 0..ts.dim() {
        let slots = ts.slots(k);
        let bits = ts.parities(k);
        let is = sp.index_at(slots[s0] as usize);
        let col_s = pyramid.col(is);
        entries.push((k, k, c.at_col(col_s).clone()));
        if let Some(prev) = is.predecessor() {
            let mut t = slots.to_vec();
            t[s0] = sp.position(prev) as u16;
            entries.push((ts.encode(&t), k, Q::sign(bits[s0] == 1)));
        }
        for t in 0..ts.d {
            let col_t = pyramid.col(sp.index_at(slots[t] as usize));
            let (lo, hi, sign) = if t < s0 && col_t >= col_s {
                (t, s0, Q::ONE)
            } else if t > s0 && col_t < col_s {
                (s0, t, -Q::ONE)
            } else {
                continue;
            };
            let target = ts.encode(&swap_slots(slots, lo, hi));
            let w = match convention {
                SignConvention::Corrected => graded_swap_sign(bits, lo, hi),
                SignConvention::Literal => Q::sign(bits[t] == 1),
            };
            entries.push((target, k, &sign * &w));
        }
    }
    Ok(ExactMatrix::from_entries(ts.dim(), ts.dim(), entries))
}

/// ν sign of the transposition `(a b)` on a parity vector, `a < b` 0-based.
fn graded_swap_sign(bits: &[u8], a: usize, b: usize) -> Q {
    let mut e = bits[a] & bits[b];
    for &m in &bits[a + 1..b] {
        e ^= (bits[a] ^ bits[b]) & m;
    }
    Q::sign(e & 1 == 1)
}

/// All `x_1, …, x_d` built from operators only: `x_1 = D_c + (℘∘e) ⊗ 1 - Σ_{t>1} τ_{1t} P_t`
/// with `P_t` projecting onto `col(i_t) < col(i_1)`, then `x_{j+1} = s_j + s_j x_j s_j`.
pub fn hecke_x_recursive(pyramid: &Pyramid, ts: &TensorSpace, c: &CharVector) -> Result<Vec<ExactMatrix>> {
    check_setup(pyramid, ts, c)?;
    let cols: Vec<Vec<usize>> =
        (0..ts.dim()).map(|k| ts.multi_index(k).iter().map(|&i| pyramid.col(i)).collect()).collect();
    let diag = |f: &dyn Fn(&[usize]) -> Q| {
        ExactMatrix::from_entries(ts.dim(), ts.dim(), (0..ts.dim()).map(|k| (k, k, f(&cols[k]))).collect::<Vec<_>>())
    };
    let e = regular_nilpotent(pyramid.m, pyramid.n)?;
    let pe = parity_operator(ts.space).mul(e.matrix());
    let mut x1 = diag(&|cl| c.at_col(cl[0]).clone()).add(&slot_insertion(ts, 1, &pe)?);
    for t in 2..=ts.d {
        let proj = diag(&|cl| if cl[t - 1] < cl[0] { Q::ONE } else { Q::ZERO });
        x1 = x1.sub(&graded_transposition(ts, 1, t)?.mul(&proj));
    }
    let mut xs = vec![x1];
    for j in 1..ts.d {
        let s = hecke_s(ts, j)?;
        let next = s.add(&s.mul(&xs[j - 1]).mul(&s));
        xs.push(next);
    }
    Ok(xs)
}

/// `s_j`: the graded swap of slots `j, j+1`.
pub fn hecke_s(ts: &TensorSpace, j: usize) -> Result<ExactMatrix> {
    if j == 0 || j >= ts.d {
        return Err(Error::InvalidParams(format!("s_{j} outside 1..{}", ts.d)));
    }
    psi_d(ts, &crate::superindex::Permutation::transposition(ts.d, j))
}

fn check_setup(pyramid: &Pyramid, ts: &TensorSpace, c: &CharVector) -> Result<()> {
    if pyramid.space() != ts.space {
        return Err(Error::Shape("pyramid and tensor space disagree on (m|n)".into()));
    }
    if c.len() != pyramid.n {
        return Err(Error::InvalidParams(format!("c needs {} entries, got {}", pyramid.n, c.len())));
    }
    Ok(())
}

/// How the `x_i` of a [`HeckeOperatorSet`] were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    Closed(SignConvention),
    Recursive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeOperatorSet {
    pub pyramid: Pyramid,
    pub d: usize,
    pub x_ops: Vec<TensorOperator>,
    pub s_ops: Vec<TensorOperator>,
    pub c: CharVector,
}

impl HeckeOperatorSet {
    /// Closed formula with the corrected signs; every relation is checked and
    /// a failure is an error.
    pub fn new(pyramid: Pyramid, d: usize, c: CharVector) -> Result<Self> {
        let set = Self::build(pyramid, d, c, Construction::Closed(SignConvention::Corrected))?;
        if let Some(bad) = check_daha_relations(&set).into_iter().find(|r| !r.pass) {
            return Err(Error::Convention(format!("relation {} fails with defect {}", bad.name, bad.max_norm)));
        }
        Ok(set)
    }

    /// No relation check.
    pub fn build(pyramid: Pyramid, d: usize, c: CharVector, how: Construction) -> Result<Self> {
        let ts = TensorSpace::new(pyramid.space(), d)?;
        let xs = match how {
            Construction::Closed(conv) => {
                (1..=d).map(|s| hecke_x_closed(&pyramid, &ts, s, &c, conv)).collect::<Result<Vec<_>>>()?
            }
            Construction::Recursive => hecke_x_recursive(&pyramid, &ts, &c)?,
        };
        let x_ops = xs.into_iter().map(|x| TensorOperator::with_degree(x, &pyramid, &ts)).collect();
        let s_ops = (1..d)
            .map(|j| hecke_s(&ts, j).map(|s| TensorOperator::with_degree(s, &pyramid, &ts)))
            .collect::<Result<_>>()?;
        Ok(HeckeOperatorSet { pyramid, d, x_ops, s_ops, c })
    }

    pub fn tensor_space(&self) -> TensorSpace {
        TensorSpace::new(self.pyramid.space(), self.d).expect("built from a valid tensor space")
    }

    pub fn x(&self, i: usize) -> &ExactMatrix {
        &self.x_ops[i - 1].op
    }

    pub fn s(&self, j: usize) -> &ExactMatrix {
        &self.s_ops[j - 1].op
    }
}

/// One evaluated defining relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    /// Largest absolute entry of the defect matrix.
    pub max_norm: Q,
}

fn relation(name: String, defect: ExactMatrix) -> RelationCheck {
    let max_norm = defect.max_abs();
    RelationCheck { name, pass: max_norm.is_zero(), max_norm }
}

/// Every defining relation of the degenerate affine Hecke algebra, as exact
/// matrix identities in the right-action convention.
pub fn check_daha_relations(set: &HeckeOperatorSet) -> Vec<RelationCheck> {
    let d = set.d;
    let n = set.x(1).rows();
    let id = ExactMatrix::identity(n);
    let mut out = Vec::new();
    for i in 1..d {
        out.push(relation(format!("s{i}^2 = 1"), set.s(i).mul(set.s(i)).sub(&id)));
    }
    for i in 1..d.saturating_sub(1) {
        let (a, b) = (set.s(i), set.s(i + 1));
        out.push(relation(
            format!("s{i}s{}s{i} = s{}s{i}s{}", i + 1, i + 1, i + 1),
            a.mul(b).mul(a).sub(&b.mul(a).mul(b)),
        ));
    }
    for i in 1..d {
        for j in i + 2..d {
            out.push(relation(format!("s{i}s{j} = s{j}s{i}"), set.s(i).commutator(set.s(j))));
        }
    }
    for i in 1..=d {
        for j in i + 1..=d {
            out.push(relation(format!("x{i}x{j} = x{j}x{i}"), set.x(i).commutator(set.x(j))));
        }
    }
    for i in 1..d {
        for j in 1..=d {
            if j != i && j != i + 1 {
                out.push(relation(format!("x{j}s{i} = s{i}x{j}"), set.x(j).commutator(set.s(i))));
            }
        }
        // word x_{i+1}s_i - s_i x_i = 1 read as right multiplication
        let defect = set.s(i).mul(set.x(i + 1)).sub(&set.x(i).mul(set.s(i))).sub(&id);
        out.push(relation(format!("x{}s{i} - s{i}x{i} = 1", i + 1), defect));
    }
    out
}

/// Minimal polynomial of `x_1` next to `Π (x - c_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCheck {
    pub minimal: Polynomial,
    pub expected: Polynomial,
    pub matches: bool,
}

pub fn cyclotomic_minpoly(set: &HeckeOperatorSet) -> CyclotomicCheck {
    let minimal = minimal_polynomial(set.x(1));
    let expected = Polynomial::from_roots(set.c.values());
    let matches = minimal == expected;
    CyclotomicCheck { minimal, expected, matches }
}

/// Every `x_i` has filtration degree at most 1, and the degree 1 component of
/// `x_1` is `(℘∘e) ⊗ 1^{⊗(d-1)}`. For n = 1 that component is zero.
pub fn leading_term_check(set: &HeckeOperatorSet) -> Result<bool> {
    let ts = set.tensor_space();
    let e = regular_nilpotent(set.pyramid.m, set.pyramid.n)?;
    let pe = parity_operator(ts.space).mul(e.matrix());
    let top = crate::tensoract::graded_component(set.x(1), &set.pyramid, &ts, 1);
    Ok(set.x_ops.iter().all(|x| x.filtration_degree.is_none_or(|r| r <= 1)) && top == slot_insertion(&ts, 1, &pe)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superindex::SuperIndex;

    #[test]
    fn char_vector_parsing() {
        let c = CharVector::parse("1/2, 3", 2).unwrap();
        assert_eq!(c.at_col(1), &Q::new(1, 2));
        assert_eq!(c.to_string(), "1/2,3");
        assert!(CharVector::parse("1,2,3", 2).is_err());
        assert!(CharVector::parse("a", 1).is_err());
    }

    #[test]
    fn omega_adjacent_is_graded_swap() {
        let ts = TensorSpace::new(crate::superindex::SuperSpace::new(1, 2), 3).unwrap();
        assert_eq!(omega_op(&ts, 1, 2).unwrap(), hecke_s(&ts, 1).unwrap());
        assert_eq!(omega_op(&ts, 2, 3).unwrap(), hecke_s(&ts, 2).unwrap());
        let s2 = hecke_s(&ts, 2).unwrap();
        assert_eq!(omega_op(&ts, 1, 3).unwrap(), s2.mul(&omega_op(&ts, 1, 2).unwrap()).mul(&s2));
        assert!(omega_op(&ts, 2, 2).is_err());
    }

    #[test]
    fn x1_example_values() {
        let p = Pyramid::new(1, 2).unwrap();
        let ts = TensorSpace::new(p.space(), 2).unwrap();
        let x1 = hecke_x_closed(&p, &ts, 1, &CharVector::zero(2), SignConvention::Corrected).unwrap();
        let u = SuperIndex::Unbarred;
        let v11 = ts.index_of(&[u(1), u(1)]);
        assert!(x1.column(v11).is_zero());
        let v21 = ts.index_of(&[u(2), u(1)]);
        let col = x1.column(v21);
        assert_eq!(col.get(v11), Q::from_int(-1));
        assert_eq!(col.get(ts.index_of(&[u(1), u(2)])), Q::ONE);
        assert_eq!(col.nnz(), 2);
    }
}

//! End-to-end verifiers: both sides of each double centralizer statement as
//! canonical subspaces, plus the filtered and graded consistency checks.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{algebra_closure, commutant, subspace_equal, ExactMatrix, Subspace};
use crate::glsuper::{centralizer_oracle_basis, parity_operator, regular_nilpotent, GlElement, NilpotentData};
use crate::hecke::{CharVector, HeckeOperatorSet};
use crate::superindex::{Pyramid, SuperIndex, SuperSpace};
use crate::tensoract::{graded_component, phi_d, poly_insertion, psi_generators, slot_insertion, TensorSpace};
use crate::wtrunc::{find_wchi, phi_dc_image, wchi_algebra};

pub const DEFAULT_SIZE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub d: Option<usize>,
    pub partitions: Option<String>,
    pub c: Option<String>,
    pub max_kazhdan: Option<i64>,
}

/// Result of one verification. `equal` is true only if every check passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub theorem: String,
    pub params: Params,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl DualityReport {
    pub fn new(theorem: &str, params: Params, lhs_dim: usize, rhs_dim: usize, checks: Vec<Check>) -> Self {
        let equal = checks.iter().all(|c| c.pass);
        DualityReport { theorem: theorem.into(), params, lhs_dim, rhs_dim, equal, checks, elapsed_ms: 0 }
    }

    /// Records the wall time of `start` (reports stay byte-stable unless asked).
    pub fn timed(mut self, start: Instant, timing: bool) -> Self {
        if timing {
            self.elapsed_ms = start.elapsed().as_millis() as u64;
        }
        self
    }
}

pub(crate) fn params(m: usize, n: usize, d: usize) -> Params {
    Params { m, n, d: Some(d), ..Params::default() }
}

/// Tensor space for (m|n)^{⊗d}, refusing anything above `cap`.
pub fn capped_space(m: usize, n: usize, d: usize, cap: usize) -> Result<TensorSpace> {
    let estimate = (m + n).checked_pow(d as u32).unwrap_or(usize::MAX);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    if m > n || n == 0 || d == 0 {
        return Err(Error::InvalidParams(format!("need 1 <= m <= n and d >= 1, got ({m},{n},{d})")));
    }
    TensorSpace::new(SuperSpace::new(m, n), d)
}

/// Equality of two canonical subspaces as a check. On a mismatch the detail
/// records which containments fail.
fn compare(name: &str, a: &Subspace, b: &Subspace) -> Result<Check> {
    if subspace_equal(a, b)? {
        return Ok(Check::new(name, true, format!("dims {} / {}; equal", a.dim(), b.dim())));
    }
    let ab = a.is_subspace_of(b)?;
    let ba = b.is_subspace_of(a)?;
    Ok(Check::new(name, false, format!("dims {} / {}; lhs in rhs: {ab}; rhs in lhs: {ba}", a.dim(), b.dim())))
}

/// φ_d of the generators `e_{aa}`, `e_{a,a+1}`, `e_{a+1,a}` (consecutive in the
/// total order). They generate gl(m|n) as an associative algebra image, so
/// they have the same commutant and closure as the full elementary basis.
pub fn gl_generator_images(ts: &TensorSpace) -> Result<Vec<ExactMatrix>> {
    let idx = ts.space.indices();
    let mut out = Vec::new();
    for (k, &a) in idx.iter().enumerate() {
        out.push(phi_d(ts, &GlElement::elementary(ts.space, a, a))?);
        if let Some(&b) = idx.get(k + 1) {
            out.push(phi_d(ts, &GlElement::elementary(ts.space, a, b))?);
            out.push(phi_d(ts, &GlElement::elementary(ts.space, b, a))?);
        }
    }
    Ok(out)
}

/// Every elementary matrix `e_{ab}` under φ_d.
pub fn gl_elementary_images(ts: &TensorSpace) -> Result<Vec<ExactMatrix>> {
    let idx = ts.space.indices();
    let pairs: Vec<(SuperIndex, SuperIndex)> = idx.iter().flat_map(|&a| idx.iter().map(move |&b| (a, b))).collect();
    pairs.into_iter().map(|(a, b)| phi_d(ts, &GlElement::elementary(ts.space, a, b))).collect()
}

pub fn verify_sergeev(m: usize, n: usize, d: usize, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let dim = ts.dim();
    let gl = gl_generator_images(&ts)?;
    let sd = psi_generators(&ts);
    let comm_gl = commutant(dim, &gl)?;
    let alg_sd = algebra_closure(dim, &sd, true)?;
    let comm_sd = commutant(dim, &sd)?;
    let alg_gl = algebra_closure(dim, &gl, true)?;
    let checks = vec![
        compare("End_gl(V^d) = <psi(S_d)>", &comm_gl, &alg_sd)?,
        compare("End_S_d(V^d) = <phi(gl)>", &comm_sd, &alg_gl)?,
    ];
    Ok(DualityReport::new("schur-sergeev", params(m, n, d), comm_gl.dim(), alg_sd.dim(), checks))
}

/// ψ_d(s_i) together with the insertions of `e` in every slot.
pub fn trunc_poly_generators(ts: &TensorSpace, e: &NilpotentData) -> Result<Vec<ExactMatrix>> {
    let mut gens = psi_generators(ts);
    for i in 1..=ts.d {
        let z = poly_insertion(ts, i, e)?;
        if !z.is_zero() {
            gens.push(z);
        }
    }
    Ok(gens)
}

/// φ_d of a basis of g_e.
pub fn centralizer_images(ts: &TensorSpace, e: &NilpotentData) -> Result<Vec<ExactMatrix>> {
    centralizer_oracle_basis(e).iter().map(|x| phi_d(ts, x)).collect()
}

/// commutant(φ_d(g_e)) = closure(ψ_d(S_d) ∪ insertions of e), any nilpotent e.
pub fn verify_vust(m: usize, n: usize, d: usize, e: &NilpotentData, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    if e.space() != ts.space {
        return Err(Error::Shape("nilpotent and tensor space disagree on (m|n)".into()));
    }
    let ge = centralizer_images(&ts, e)?;
    let comm = commutant(ts.dim(), &ge)?;
    let alg = algebra_closure(ts.dim(), &trunc_poly_generators(&ts, e)?, true)?;
    let checks = vec![compare("End_{g_e}(V^d) = <psi(S_d), e-insertions>", &comm, &alg)?];
    let mut p = params(m, n, d);
    p.partitions = Some(e.to_string());
    Ok(DualityReport::new("super-vust", p, comm.dim(), alg.dim(), checks))
}

/// Both equalities for the truncated polynomial semidirect product, regular e.
pub fn verify_trunc_poly_dc(m: usize, n: usize, d: usize, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let e = regular_nilpotent(m, n)?;
    let ge = centralizer_images(&ts, &e)?;
    let tp = trunc_poly_generators(&ts, &e)?;
    let comm_ge = commutant(ts.dim(), &ge)?;
    let alg_tp = algebra_closure(ts.dim(), &tp, true)?;
    let comm_tp = commutant(ts.dim(), &tp)?;
    let alg_ge = algebra_closure(ts.dim(), &ge, true)?;
    let checks = vec![
        compare("End_{g_e}(V^d) = <psi(S_d), e-insertions>", &comm_ge, &alg_tp)?,
        compare("End_{C_l[x] x S_d}(V^d) = <phi(g_e)>", &comm_tp, &alg_ge)?,
    ];
    let mut p = params(m, n, d);
    p.partitions = Some(e.to_string());
    Ok(DualityReport::new("trunc-poly-dc", p, comm_ge.dim(), alg_tp.dim(), checks))
}

/// Thm 7.7 at truncated level: (a) dimension identity, (b) double commutant,
/// (c) images of discovered W_χ elements lie in the commutant.
pub fn verify_hecke_dc(
    m: usize,
    n: usize,
    d: usize,
    c: &CharVector,
    max_kazhdan: i64,
    cap: usize,
) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    if d < 2 {
        return Err(Error::InvalidParams("the Hecke duality needs d >= 2".into()));
    }
    let pyr = Pyramid::new(m, n)?;
    let set = HeckeOperatorSet::new(pyr, d, c.clone())?;
    let gens: Vec<ExactMatrix> = set.x_ops.iter().chain(&set.s_ops).map(|t| t.op.clone()).collect();
    let comm = commutant(ts.dim(), &gens)?;
    let e = regular_nilpotent(m, n)?;
    let alg_ge = algebra_closure(ts.dim(), &centralizer_images(&ts, &e)?, true)?;
    let hecke_alg = algebra_closure(ts.dim(), &gens, true)?;
    let double = commutant(ts.dim(), &comm.matrices(ts.dim()))?;
    let alg = wchi_algebra(pyr, max_kazhdan)?;
    let w = find_wchi(&alg, max_kazhdan);
    let mut outside = 0;
    for u in &w.elements {
        let img = phi_dc_image(&alg, &ts, c, u)?;
        if !comm.contains(&img.flatten()) {
            outside += 1;
        }
    }
    let checks = vec![
        Check::new(
            "dim End_SH(V_c^d) = dim <phi(g_e)>",
            comm.dim() == alg_ge.dim(),
            format!("{} vs {}", comm.dim(), alg_ge.dim()),
        ),
        compare("double commutant of Hecke image = <x_i, s_j>", &double, &hecke_alg)?,
        Check::new(
            "Phi_{d,c}(W_chi) lies in End_SH(V_c^d)",
            outside == 0,
            format!(
                "{} of {} W_chi basis elements up to Kazhdan degree {max_kazhdan} outside",
                outside,
                w.elements.len()
            ),
        ),
    ];
    let mut p = params(m, n, d);
    p.c = Some(c.to_string());
    p.max_kazhdan = Some(max_kazhdan);
    Ok(DualityReport::new("hecke-dc", p, comm.dim(), alg_ge.dim(), checks))
}

/// Leading terms of the Hecke generators against ψ_d(s_j) and the ℘∘e insertions,
/// plus the graded dimension identity of the monomials `x^a ψ(w)`.
pub fn filtration_consistency(m: usize, n: usize, d: usize, c: &CharVector, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let pyr = Pyramid::new(m, n)?;
    let set = HeckeOperatorSet::new(pyr, d, c.clone())?;
    let e = regular_nilpotent(m, n)?;
    let pe = parity_operator(ts.space).mul(e.matrix());
    let top = |op: &ExactMatrix, r: i64| graded_component(op, &pyr, &ts, r);
    let mut checks = Vec::new();
    for (j, s) in set.s_ops.iter().enumerate() {
        checks.push(Check::new(
            format!("gr s{} = psi(s{})", j + 1, j + 1),
            s.filtration_degree == Some(0) && top(&s.op, 0) == s.op,
            format!("filtration degree {:?}", s.filtration_degree),
        ));
    }
    let lead: Vec<ExactMatrix> = (1..=d).map(|i| slot_insertion(&ts, i, &pe)).collect::<Result<_>>()?;
    for (i, x) in set.x_ops.iter().enumerate() {
        let ok = x.filtration_degree.is_none_or(|r| r <= 1) && top(&x.op, 1) == lead[i];
        checks.push(Check::new(
            format!("gr x{} = (wp e)-insertion in slot {}", i + 1, i + 1),
            ok,
            format!("filtration degree {:?}", x.filtration_degree),
        ));
    }
    if d >= 2 {
        let prod = set.x(1).mul(set.x(2));
        checks.push(Check::new(
            "gr(x1 x2) = gr x1 gr x2",
            top(&prod, 2) == lead[0].mul(&lead[1]),
            "degree 2 component",
        ));
    }
    // ζ_d: leading terms of x^a ψ(w) span as much as e^a ψ(w), for Σa ≤ r.
    let perms: Vec<ExactMatrix> = crate::superindex::Permutation::all(d)
        .iter()
        .map(|w| crate::tensoract::psi_d(&ts, w))
        .collect::<Result<_>>()?;
    let plain: Vec<ExactMatrix> = (1..=d).map(|i| poly_insertion(&ts, i, &e)).collect::<Result<_>>()?;
    let bound = n * d;
    let exps = exponent_vectors(d, bound);
    let mut mismatch = Vec::new();
    for r in 0..=bound {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for a in exps.iter().filter(|a| a.iter().sum::<usize>() <= r) {
            let deg: usize = a.iter().sum();
            let mut xa = ExactMatrix::identity(ts.dim());
            let mut za = ExactMatrix::identity(ts.dim());
            for (i, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    xa = xa.mul(set.x(i + 1));
                    za = za.mul(&plain[i]);
                }
            }
            for w in &perms {
                lhs.push(top(&xa.mul(w), deg as i64));
                rhs.push(za.mul(w));
            }
        }
        let (dl, dr) = (
            Subspace::span_matrices(ts.dim() * ts.dim(), &lhs).dim(),
            Subspace::span_matrices(ts.dim() * ts.dim(), &rhs).dim(),
        );
        if dl != dr {
            mismatch.push(format!("r={r}: {dl} vs {dr}"));
        }
    }
    checks.push(Check::new(
        "zeta_d graded dimension identity",
        mismatch.is_empty(),
        if mismatch.is_empty() { format!("r <= {bound}") } else { mismatch.join("; ") },
    ));
    let mut p = params(m, n, d);
    p.c = Some(c.to_string());
    Ok(DualityReport::new("filtration", p, 0, 0, checks))
}

fn exponent_vectors(d: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let used: usize = v.iter().sum();
                (0..=bound - used).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every (m, n, d) with 1 <= m <= n, d >= 1 and (m+n)^d <= cap.
pub fn sergeev_grid(cap: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..cap {
        for m in 1..=n {
            let mut d = 1;
            while (m + n).checked_pow(d as u32).is_some_and(|x| x <= cap) {
                out.push((m, n, d));
                d += 1;
            }
        }
    }
    out
}

/// Runs [`verify_sergeev`] over the whole grid in parallel, in grid order.
pub fn verify_sergeev_grid(cap: usize) -> Result<Vec<DualityReport>> {
    use rayon::prelude::*;
    let mut grid = sergeev_grid(cap);
    // Largest spaces first so the long tail starts early.
    grid.sort_by_key(|&(m, n, d)| std::cmp::Reverse((m + n).pow(d as u32)));
    let mut out: Vec<((usize, usize, usize), DualityReport)> = grid
        .into_par_iter()
        .map(|(m, n, d)| verify_sergeev(m, n, d, cap).map(|r| ((m, n, d), r)))
        .collect::<Result<_>>()?;
    out.sort_by_key(|(k, _)| (k.1, k.0, k.2));
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

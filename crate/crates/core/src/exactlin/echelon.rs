use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::scalar::Q;
use super::vector::SparseVec;
use crate::error::{Error, Result};

const NO_PIVOT: u32 = u32::MAX;

/// Which nonzero entry of a row serves as its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSide {
    First,
    Last,
}

/// Incremental row-echelon form over Q.
///
/// Rows are kept monic at their pivot. During insertion only the pivot
/// side is eliminated; [`Echelon::finish`] performs the full back-reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    side: PivotSide,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(dim: usize, side: PivotSide) -> Self {
        Echelon { side, dim, rows: Vec::new(), pivot_row: vec![NO_PIVOT; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn lead<'a>(&self, v: &'a SparseVec) -> Option<&'a (usize, Q)> {
        match self.side {
            PivotSide::First => v.first(),
            PivotSide::Last => v.last(),
        }
    }

    /// Eliminates the pivot-side entry of `v` until it has no pivot row.
    pub fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, a)) = self.lead(&v) {
            let r = self.pivot_row[*c];
            if r == NO_PIVOT {
                break;
            }
            let a = -a;
            v = v.axpy(&a, &self.rows[r as usize]);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|i| i < self.dim));
        let mut v = self.reduce_leading(v);
        let Some((c, a)) = self.lead(&v).cloned() else {
            return false;
        };
        v.scale_in_place(&a.recip());
        self.pivot_row[c] = self.rows.len() as u32;
        self.rows.push(v);
        true
    }

    /// Fully reduced rows sorted by pivot, each monic at its pivot.
    pub fn finish(self) -> Vec<SparseVec> {
        let Echelon { side, dim, rows, pivot_row } = self;
        let mut order: Vec<usize> = (0..dim).filter(|&c| pivot_row[c] != NO_PIVOT).collect();
        // Rows are finalised starting from the far end, so that subtracting a
        // finished row never reintroduces a pivot column.
        if side == PivotSide::First {
            order.reverse();
        }
        let mut done: Vec<Option<SparseVec>> = vec![None; rows.len()];
        let mut rows: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
        for &p in &order {
            let r = pivot_row[p] as usize;
            let mut v = rows[r].take().unwrap();
            let hits: Vec<(usize, Q)> =
                v.iter().filter(|(c, _)| *c != p && pivot_row[*c] != NO_PIVOT).cloned().collect();
            for (c, a) in hits {
                let other = done[pivot_row[c] as usize].as_ref().expect("pivot row finished first");
                v = v.axpy(&-a, other);
            }
            done[r] = Some(v);
        }
        let mut out: Vec<SparseVec> = done.into_iter().map(|v| v.unwrap()).collect();
        match side {
            PivotSide::First => out.sort_by_key(|v| v.first().unwrap().0),
            PivotSide::Last => out.sort_by_key(|v| v.last().unwrap().0),
        }
        out
    }
}

/// Linear subspace of Q^ambient in canonical form.
///
/// The basis is in reduced echelon form with the pivot of each vector at its
/// last nonzero entry (coefficient 1), all other basis vectors vanishing there,
/// sorted by pivot. Two subspaces are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new(ambient, PivotSide::Last);
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(ech)
    }

    pub fn from_echelon(ech: Echelon) -> Self {
        assert_eq!(ech.side, PivotSide::Last, "canonical form uses last-entry pivots");
        let ambient = ech.dim;
        Subspace { ambient, basis: ech.finish() }
    }

    /// Caller guarantees the canonical form.
    pub(crate) fn from_canonical_unchecked(ambient: usize, basis: Vec<SparseVec>) -> Self {
        let s = Subspace { ambient, basis };
        debug_assert!(s.is_canonical());
        s
    }

    /// Span of flattened matrices.
    pub fn span_matrices<'a>(ambient: usize, mats: impl IntoIterator<Item = &'a ExactMatrix>) -> Self {
        Self::span(ambient, mats.into_iter().map(|m| m.flatten()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|v| v.last().unwrap().0)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots().map(|p| v.get(p)).collect();
        let mut rest = v.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                rest = rest.axpy(&-c, b);
            }
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// Basis vectors reshaped into `n x n` matrices.
    pub fn matrices(&self, n: usize) -> Vec<ExactMatrix> {
        assert_eq!(n * n, self.ambient, "ambient dimension is not n^2");
        self.basis.iter().map(|v| ExactMatrix::unflatten(v, n, n)).collect()
    }

    fn is_canonical(&self) -> bool {
        let piv: Vec<usize> = self.pivots().collect();
        piv.windows(2).all(|w| w[0] < w[1])
            && self.basis.iter().all(|v| v.last().unwrap().1.is_one() && v.max_index().unwrap() < self.ambient)
            && self.basis.iter().all(|v| {
                let (_, rest) = v.entries().split_last().unwrap();
                rest.iter().all(|(i, _)| piv.binary_search(i).is_err())
            })
    }
}

/// Decides equality of two subspaces by their canonical bases.
pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.check_ambient(b)?;
    Ok(a == b)
}

/// Right null space of the system whose rows are `rows`, with `ncols` unknowns.
pub fn kernel_of_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Subspace {
    let mut ech = Echelon::new(ncols, PivotSide::First);
    for r in rows {
        ech.insert(r);
    }
    kernel_from_echelon(ech)
}

pub(crate) fn kernel_from_echelon(ech: Echelon) -> Subspace {
    let ncols = ech.dim;
    let rref = ech.finish();
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r.first().unwrap().0] = true;
    }
    let mut vecs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ncols];
    for r in &rref {
        let p = r.first().unwrap().0;
        for (f, a) in r.iter().skip(1) {
            vecs[*f].push((p, -a));
        }
    }
    // With first-entry pivots the standard kernel vectors (free variable = 1)
    // are already in canonical last-entry form.
    let basis = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut e = std::mem::take(&mut vecs[f]);
            e.push((f, Q::ONE));
            SparseVec::from_sorted_unchecked(e)
        })
        .collect();
    Subspace::from_canonical_unchecked(ncols, basis)
}

pub fn kernel(m: &ExactMatrix) -> Subspace {
    let t = m.transpose();
    kernel_of_rows(m.cols(), t.columns().iter().cloned())
}

pub fn rank(m: &ExactMatrix) -> usize {
    let mut ech = Echelon::new(m.rows(), PivotSide::Last);
    for c in m.columns() {
        ech.insert(c.clone());
    }
    ech.rank()
}

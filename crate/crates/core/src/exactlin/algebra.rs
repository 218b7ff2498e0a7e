use std::collections::VecDeque;

use super::echelon::{kernel_from_echelon, Echelon, PivotSide, Subspace};
use super::matrix::ExactMatrix;
use super::scalar::Q;
use super::vector::SparseVec;
use crate::error::{Error, Result};

fn check_square(n: usize, gens: &[ExactMatrix]) -> Result<()> {
    for (k, g) in gens.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape(format!("generator {k} is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
        }
    }
    Ok(())
}

/// Linear span of all words in `gens` (and the identity if requested),
/// as a subspace of the flattened `n x n` matrices.
pub fn algebra_closure(n: usize, gens: &[ExactMatrix], include_identity: bool) -> Result<Subspace> {
    check_square(n, gens)?;
    let mut ech = Echelon::new(n * n, PivotSide::Last);
    let mut queue: VecDeque<ExactMatrix> = VecDeque::new();
    let seeds = include_identity.then(|| ExactMatrix::identity(n)).into_iter().chain(gens.iter().cloned());
    for s in seeds {
        if ech.insert(s.flatten()) {
            queue.push_back(s);
        }
    }
    // by_col[k]: generators with a nonzero column k, i.e. those for which
    // g·a can be nonzero when a has a nonzero row k.
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (gi, g) in gens.iter().enumerate() {
        for (k, c) in g.columns().iter().enumerate() {
            if !c.is_zero() {
                by_col[k].push(gi);
            }
        }
    }
    let mut stamp = vec![usize::MAX; gens.len()];
    // Left multiplication by generators reaches every word; elements that
    // add nothing new need not be expanded further.
    let mut step = 0;
    'outer: while let Some(a) = queue.pop_front() {
        let mut candidates = Vec::new();
        for (i, _, _) in a.entries() {
            for &gi in &by_col[i] {
                if stamp[gi] != step {
                    stamp[gi] = step;
                    candidates.push(gi);
                }
            }
        }
        candidates.sort_unstable();
        step += 1;
        for g in candidates.into_iter().map(|gi| &gens[gi]) {
            if ech.rank() == n * n {
                break 'outer;
            }
            let p = g.mul(&a);
            if ech.insert(p.flatten()) {
                queue.push_back(p);
            }
        }
    }
    Ok(Subspace::from_echelon(ech))
}

/// All `n x n` matrices commuting with every generator, flattened row-major.
pub fn commutant(n: usize, gens: &[ExactMatrix]) -> Result<Subspace> {
    check_square(n, gens)?;
    let nn = n * n;

    // Diagonal generators only cut out coordinates: X[a,b] (g_bb - g_aa) = 0.
    let mut allowed = vec![true; nn];
    let diags: Vec<Vec<Q>> = gens.iter().filter(|g| g.is_diagonal()).map(|g| g.diagonal()).collect();
    for d in &diags {
        for a in 0..n {
            for b in 0..n {
                if d[a] != d[b] {
                    allowed[a * n + b] = false;
                }
            }
        }
    }
    let mut local = vec![u32::MAX; nn];
    let mut flat_of: Vec<usize> = Vec::new();
    for (k, ok) in allowed.iter().enumerate() {
        if *ok {
            local[k] = flat_of.len() as u32;
            flat_of.push(k);
        }
    }
    let nvars = flat_of.len();

    let mut ech = Echelon::new(nvars, PivotSide::First);
    for g in gens.iter().filter(|g| !g.is_diagonal()) {
        let gt = g.transpose();
        for a in 0..n {
            for b in 0..n {
                if ech.rank() == nvars {
                    break;
                }
                // (XG - GX)[a,b] = sum_k X[a,k] G[k,b] - sum_k G[a,k] X[k,b]
                let mut row: Vec<(usize, Q)> = Vec::new();
                for (k, v) in g.column(b).iter() {
                    let u = local[a * n + k];
                    if u != u32::MAX {
                        row.push((u as usize, v.clone()));
                    }
                }
                for (k, v) in gt.column(a).iter() {
                    let u = local[k * n + b];
                    if u != u32::MAX {
                        row.push((u as usize, -v));
                    }
                }
                let row = SparseVec::from_entries(row);
                if !row.is_zero() {
                    ech.insert(row);
                }
            }
        }
    }
    let k = kernel_from_echelon(ech);
    // Monotone relabelling keeps the canonical form.
    let basis = k.basis().iter().map(|v| v.map_indices(|i| flat_of[i])).collect();
    Ok(Subspace::from_canonical_unchecked(nn, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::echelon::subspace_equal;

    #[test]
    fn closure_examples() {
        assert_eq!(algebra_closure(2, &[], true).unwrap().dim(), 1);
        let e12 = ExactMatrix::unit(2, 0, 1);
        let e21 = ExactMatrix::unit(2, 1, 0);
        assert_eq!(algebra_closure(2, std::slice::from_ref(&e12), true).unwrap().dim(), 2);
        assert_eq!(algebra_closure(2, &[e12, e21], true).unwrap().dim(), 4);
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant(3, &[ExactMatrix::identity(3)]).unwrap().dim(), 9);
        let full: Vec<ExactMatrix> = (0..2).flat_map(|i| (0..2).map(move |j| ExactMatrix::unit(2, i, j))).collect();
        let c = commutant(2, &full).unwrap();
        assert!(subspace_equal(&c, &Subspace::span_matrices(4, [&ExactMatrix::identity(2)])).unwrap());
        let g = ExactMatrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        let c = commutant(2, &[g]).unwrap();
        let diag = Subspace::span_matrices(4, [&ExactMatrix::unit(2, 0, 0), &ExactMatrix::unit(2, 1, 1)]);
        assert_eq!(c, diag);
    }

    #[test]
    fn size_mismatch_is_error() {
        assert!(commutant(2, &[ExactMatrix::identity(3)]).is_err());
        assert!(algebra_closure(2, &[ExactMatrix::identity(3)], false).is_err());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Q;
use super::vector::{Accumulator, SparseVec};
use crate::error::{Error, Result};

/// Sparse exact matrix, stored column by column.
///
/// Operators act on column vectors: `(A * B) v = A (B v)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Q::ONE)
    }

    pub fn scalar(n: usize, a: &Q) -> Self {
        let columns = (0..n)
            .map(
                |i| if a.is_zero() { SparseVec::new() } else { SparseVec::from_sorted_unchecked(vec![(i, a.clone())]) },
            )
            .collect();
        ExactMatrix { rows: n, cols: n, columns }
    }

    /// Elementary matrix with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_entries(n, n, [(i, j, Q::ONE)])
    }

    /// Duplicate positions are summed.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            per_col[j].push((i, v));
        }
        ExactMatrix { rows, cols, columns: per_col.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|i| i < rows)));
        ExactMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_entries(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&v| Q::from_int(v)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::ZERO; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// All `(row, col, value)` triples in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Q {
        self.diagonal().into_iter().sum()
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn scale(&self, a: &Q) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|c| c.scale(a)).collect() }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: &Q, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(x, y)| x.axpy(a, y)).collect(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.axpy(&Q::ONE, other)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.axpy(&Q::from_int(-1), other)
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|bcol| {
                for (k, b) in bcol.iter() {
                    for (i, a) in self.columns[*k].iter() {
                        acc.add(*i, &(a * b));
                    }
                }
                acc.drain()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for (k, b) in v.iter() {
            for (i, a) in self.columns[*k].iter() {
                acc.add(*i, &(a * b));
            }
        }
        acc.drain()
    }

    /// `self * g - g * self`.
    pub fn commutator(&self, g: &ExactMatrix) -> ExactMatrix {
        self.mul(g).sub(&g.mul(self))
    }

    /// Largest absolute entry, zero for the zero matrix.
    pub fn max_abs(&self) -> Q {
        self.entries().map(|(_, _, v)| v.abs()).max().unwrap_or(Q::ZERO)
    }

    pub fn pow(&self, k: u32) -> ExactMatrix {
        assert!(self.is_square());
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row-major flattening: entry `(i, j)` goes to index `i * cols + j`.
    pub fn flatten(&self) -> SparseVec {
        let c = self.cols;
        SparseVec::from_entries(self.entries().map(|(i, j, v)| (i * c + j, v.clone())).collect())
    }

    pub fn unflatten(v: &SparseVec, rows: usize, cols: usize) -> ExactMatrix {
        Self::from_entries(rows, cols, v.iter().map(|(k, x)| (k / cols, k % cols, x.clone())))
    }

    /// Kronecker product, `self` on the most significant index.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (r2, c2) = (other.rows, other.cols);
        let entries =
            self.entries().flat_map(|(i, j, a)| other.entries().map(move |(k, l, b)| (i * r2 + k, j * c2 + l, a * b)));
        Self::from_entries(self.rows * r2, self.cols * c2, entries.collect::<Vec<_>>())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut inv: Vec<Vec<Q>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Q::ONE } else { Q::ZERO }).collect()).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].recip();
            for j in 0..n {
                a[c][j] = &a[c][j] * &piv;
                inv[c][j] = &inv[c][j] * &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &a[c][j] * &f;
                        a[r][j] -= &t;
                        let t = &inv[c][j] * &f;
                        inv[r][j] -= &t;
                    }
                }
            }
        }
        Ok(ExactMatrix::from_dense(&inv))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

//! Exact rational linear algebra: kernels, canonical subspaces, algebra
//! closures, commutants and minimal polynomials.

mod algebra;
mod echelon;
mod matrix;
mod poly;
mod scalar;
mod vector;

pub use algebra::{algebra_closure, commutant};
pub use echelon::{kernel, kernel_of_rows, rank, subspace_equal, Echelon, PivotSide, Subspace};
pub use matrix::ExactMatrix;
pub use poly::{minimal_polynomial, Polynomial};
pub use scalar::{ExactScalar, Q};
pub use vector::SparseVec;

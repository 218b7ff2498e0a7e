//! The index set I(m|n), pyramid coordinates, the sign functions alpha and
//! nu, and S_d orbit combinatorics.

mod index;
mod orbits;
mod perm;
mod signs;

pub use index::{MultiIndex, Parity, Pyramid, Row, SuperIndex, SuperSpace, TripleIndex};
pub use orbits::{
    admissible_triples, j_pairs, k_preimage, orbit_representatives, realisable_triples, shifts, to_representative,
    triple_matrix, tuples, upsilon_multi, Orbit,
};
pub use perm::{permute, Permutation};
pub(crate) use signs::alpha_unchecked;
pub use signs::{add_parities, alpha, nu};

/// Permutes a multi-index: `i.sigma = (i_{sigma(1)}, ..., i_{sigma(d)})`.
pub fn permute_multiindex(i: &MultiIndex, sigma: &Permutation) -> MultiIndex {
    i.permute(sigma)
}

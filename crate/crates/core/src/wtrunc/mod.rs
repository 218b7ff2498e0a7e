//! Degree-truncated U(gl(m|n)) with PBW straightening, the projection Pr
//! along I_χ, and the finite W-superalgebra W_χ found as a linear solve.

mod uea;
mod wchi;

pub use uea::{PbwAlgebra, PbwMonomial, UeaElement};
pub use wchi::{
    closure_failures, find_wchi, hilbert_cumulative, is_wchi_element, p_monomials, phi_dc_generator, phi_dc_image,
    pr_projection, wchi_algebra, wchi_hilbert_check, HilbertCheck, WchiBasisTrunc,
};

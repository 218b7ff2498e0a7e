//! Exact verification of double centralizer theorems for gl(m|n):
//! Schur-Sergeev duality, the super Vust theorem for nilpotent centralizers,
//! and the cyclotomic degenerate affine Hecke duality with finite
//! W-superalgebras.

pub mod cli;
pub mod duality;
pub mod error;
pub mod exactlin;
pub mod glsuper;
pub mod hecke;
pub mod superindex;
pub mod tensoract;
pub mod wtrunc;

pub use error::{Error, Result};

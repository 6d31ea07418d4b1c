//! Exact computations for singularity categories of hypersurfaces and quivers.
//!
//! The crate works over the rationals, the Gaussian rationals or a prime
//! field, and reduces every homological question to finite linear algebra on
//! weight slices.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exactcore;
pub mod hochschild;
pub mod complexes;
pub mod koszul;
pub mod koszuldual;
pub mod matfac;
pub mod polyring;
pub mod quiverlab;
pub mod stabilize;

pub use error::{Error, Result};

//! Exact scalars and linear algebra over the rationals, the Gaussian
//! rationals and prime fields.

pub mod matrix;
pub mod scalar;

pub use matrix::{common_field, Echelon, ExactMatrix, SparseRow};
pub use scalar::{FieldKind, Scalar};

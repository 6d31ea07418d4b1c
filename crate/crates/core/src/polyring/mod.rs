//! Weighted polynomial rings, Gröbner bases, quotient staircases and the
//! Milnor and Tjurina algebras of a hypersurface.

pub mod groebner;
pub mod milnor;
pub mod parse;
pub mod pmatrix;
pub mod poly;
pub mod ring;

pub use groebner::{buchberger, divide, division_coefficients, GroebnerBasis, QuotientBasis};
pub use milnor::{
    is_quasi_homogeneous, jacobian_ideal, milnor_algebra, milnor_algebra_truncated, tjurina_algebra,
    tjurina_algebra_truncated, SingularityAlgebra,
};
pub use parse::{format_poly, parse_poly, parse_scalar};
pub use pmatrix::PolyMatrix;
pub use poly::Poly;
pub use ring::{same_ring, Mono, Ring, RingRef};

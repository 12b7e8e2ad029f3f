//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision; there is no floating point in any
//! decision path.

mod lattice;
mod matrix;
mod smith;
mod symplectic;

pub use lattice::{
    is_positive_definite, kernel_saturated, kernel_saturated_rat, leading_principal_minors,
    saturate, SaturatedSublattice,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use smith::{hermite_normal_form_rows, smith_normal_form, SmithForm};
pub use symplectic::{canonical_alternating, symplectic_reduce, SymplecticBasis};

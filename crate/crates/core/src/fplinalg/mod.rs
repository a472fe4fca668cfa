//! Linear algebra over `F_p`: dense matrices, system solving, canonical
//! subspaces and exhaustive enumeration of points, hyperplanes and
//! subspaces.
//!
//! Vectors are `Vec<u8>` of least nonnegative residues.

mod form;
mod matrix;
mod sparse;
mod subspace;

pub use form::LinearForm;
pub use matrix::{solve_linear, solve_linear_many, solve_particular_many, Factorization, Matrix, Solution, Solutions};
pub use sparse::SparseSystem;
pub use subspace::{
    all_subspaces, coefficient_vectors, hyperplanes_containing, normalized_vectors, projective_count,
    projective_points, Subspace,
};

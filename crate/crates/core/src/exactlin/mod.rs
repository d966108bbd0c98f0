//! Exact linear algebra over ℚ or a prime field.
//!
//! Everything downstream reduces to ranks, kernels, preimages and quotients
//! of sparse matrices; bases are kept in reduced echelon form so results are
//! reproducible bit-for-bit.

mod echelon;
mod matrix;
mod scalar;
mod subspace;
mod vector;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{
    image_basis, kernel_basis, preimage_subspace, quotient_basis, rank, Quotient, Subspace,
};
pub use vector::SparseVec;

//! Dense complex linear algebra: matrices, vectors and Hermitian
//! eigendecomposition.

mod eigen;
mod matrix;

pub use eigen::{eigendecompose, from_eigenbasis, to_eigenbasis, EigenDecomposition, HERMITIAN_RTOL, MAX_SWEEPS};
pub use matrix::{ComplexMatrix, ComplexVector};

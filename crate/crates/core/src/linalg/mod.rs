//! Exact linear algebra over any [`Field`](crate::field::Field), plus a
//! dense symmetric eigensolver for `f64`.

mod eigen;
mod matrix;
mod sparse;
mod subspace;

pub use eigen::{sym_eigen, SymEigen};
pub use matrix::{AffineSolution, Matrix, MatrixJson};
pub use sparse::SparseSystem;
pub use subspace::Subspace;

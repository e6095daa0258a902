//! Dense complex linear algebra with labelled tensor factors.
//!
//! Everything here is a pure function of its inputs. States are stored with
//! their [`MultipartiteShape`], whose factor order fixes the basis ordering:
//! the leftmost factor is the most significant digit of a basis index.

mod density;
mod linalg;
mod matrix;
mod ops;
mod shape;

pub use density::DensityMatrix;
pub use linalg::{eigh, eigvalsh, psd_distance, Eigh};
pub use matrix::{kron, kron_all, ComplexMatrix};
pub use ops::{
    partial_trace, partial_trace_matrix, partial_transpose, partial_transpose_matrix,
    permute_subsystems,
};
pub use shape::{Label, MultipartiteShape};

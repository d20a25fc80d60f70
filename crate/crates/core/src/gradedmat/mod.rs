//! Sparse matrices on a graded basis, graded tensor operations and
//! representations of the quantum superalgebra.

mod coeff;
mod matrix;
mod rep;
mod tensor;

pub use coeff::Coeff;
pub use matrix::{elementary, EntryDiff, GradedMatrix};
pub use rep::{
    adjoint, build_trivial_rep, build_vector_rep, load_representation, pi_sigma, q_number,
    qh_diag, qh_weights, serre_words, GeneratorFamily, Representation, SerreInstance,
};
pub use tensor::{graded_dagger, graded_kron, graded_permutation, kron_gradings, tensor_dagger};

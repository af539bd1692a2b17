//! Exact rational dense linear algebra: ranks, nullspaces, orthogonal
//! complements and solvers for linear matrix equations.

mod equations;
pub mod float;
mod matrix;
mod rational;
mod sparse;
mod subspace;

pub use equations::{solve_matrix_equation, MatrixSolutionSpace, MatrixUnknowns};
pub(crate) use equations::{commutator_entry_terms, SparseSquare};
pub use matrix::{
    add_vectors, dot, int_vector, is_zero_vector, primitive, scale_vector, sub_vectors,
    unit_vector, zero_vector, ExactMatrix, Vector,
};
pub use rational::Rational;
pub use sparse::{Echelon, SparseRow};
pub use subspace::{nullspace, orth_complement, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exact rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

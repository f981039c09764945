//! Finite fields and matrices over them. Matrix groups become permutation groups
//! through their action on nonzero vectors.

mod field;
mod matrix;

pub use field::{FieldElem, FiniteField};
pub use matrix::{matrix_rep_to_perm, BilinearForm, Matrix, VectorDomain};

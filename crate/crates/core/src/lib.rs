//! Verification and rank reduction of string C-group representations.
//!
//! Representations are ordered sequences of involutions `ρ0, …, ρ_{n−1}`. All group
//! computations run on permutations; matrix generators are converted to their
//! action on the nonzero vectors of the underlying space.
//!
//! - [`perm`]: permutations and permutation groups.
//! - [`ffmatrix`]: GF(p^k), matrices, bilinear forms and reflections.
//! - [`sggi`]: the representation type and its verification.
//! - [`rankred`]: rank reduction and its guarantee flags.
//! - [`cpr`]: CPR graphs.
//! - [`constructions`]: simplex and reflection factories, bundled fixtures.
//! - [`cli`]: the `stringc` command and the representation file formats.

pub mod cli;
pub mod constructions;
pub mod cpr;
pub mod error;
pub mod ffmatrix;
pub mod perm;
pub mod rankred;
pub mod sggi;

pub use error::{Error, Result};

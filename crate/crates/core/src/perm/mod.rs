//! Permutation arithmetic and permutation-group algorithms.

mod bsgs;
mod group;
mod permutation;

pub use bsgs::StabChain;
pub use group::{ElementBudget, PermGroup, DEFAULT_SEED};
pub use permutation::Permutation;

pub(crate) use bsgs::Scratch;
pub(crate) use group::partition_from_union_find;

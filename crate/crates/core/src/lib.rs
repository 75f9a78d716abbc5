//! Exact character theory for small finite groups.
//!
//! [`group`] builds groups as Cayley tables, [`cyclo`] supplies exact
//! cyclotomic numbers, [`chartab`] computes character tables, and
//! [`clifford`] / [`glauberman`] implement the relative theory used by the
//! checks. [`ambient::Ambient`] caches everything that lives inside one
//! fixed group.

pub mod ambient;
pub mod chartab;
pub mod clifford;
pub mod cyclo;
pub mod glauberman;
pub mod group;
pub mod par;

pub use ambient::Ambient;
pub use chartab::{CharacterTable, ClassFunction};
pub use cyclo::Cyclotomic;
pub use group::{FiniteGroup, QuotientGroup, Subgroup};

use thiserror::Error;

/// Errors from the relative character theory layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Char(#[from] chartab::CharError),
    #[error(transparent)]
    Cyclo(#[from] cyclo::CycloError),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
}

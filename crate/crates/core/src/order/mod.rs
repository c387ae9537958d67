//! Forcing posets: explicit finite orders and lazily presented countable
//! ones, density, compatibility, separativity and splitting.

pub mod enumerate;
pub mod finite;
pub mod lazy;

use thiserror::Error;

pub use enumerate::posets_up_to_iso;
pub use finite::{FinitePoset, PosetFile, Splitting};
pub use lazy::{
    has_splitting_prefix, standard_refiners, Bound, DenseSpec, LazyPoset, PartialFn, PartialFnPoset, RefineError,
    RefinerKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate condition label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown condition `{0}`")]
    UnknownLabel(String),
    #[error("antisymmetry fails: {p} ≤ {q} and {q} ≤ {p}")]
    Antisymmetry { p: String, q: String },
    #[error("transitivity fails: {p} ≤ {q} and {q} ≤ {r} but not {p} ≤ {r}")]
    Transitivity { p: String, q: String, r: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is infinite and cannot be materialized")]
    Infinite(String),
    #[error("invalid poset file: {0}")]
    Json(String),
    #[error("malformed condition `{0}`")]
    BadCondition(String),
    #[error("not an order automorphism: {0}")]
    NotAutomorphism(String),
}

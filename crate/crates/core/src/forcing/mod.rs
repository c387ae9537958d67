//! Forcing over finite separative posets: names, Boolean values in the
//! regular-open algebra, the forcing relation, and the action of poset
//! automorphisms.
//!
//! Quantifiers range over a declared finite universe of names rather than
//! over all names. The universe is closed under taking subnames and under the
//! attached automorphism group, which is exactly what the symmetry lemma and
//! the weak-homogeneity argument need to hold verbatim in this semantics.

mod context;
pub mod family;
mod name;
mod symmetry;

use thiserror::Error;

use crate::hf::HfError;
use crate::logic::{FormulaError, Var};
use crate::order::OrderError;
use crate::roalg::RoError;

pub use context::{canonical_generic_name, ForcingBudget, ForcingContext, NameUniverse, Sentence};
pub use name::{cond_label, eval_name, name_from_json, name_to_json, parse_name, NameCond, PName};
pub use symmetry::{
    check_symmetry_lemma, group_closure, homogeneity_counterexamples, homogeneity_zero_one, is_weakly_homogeneous,
    range_automorphisms, Automorphism, SymmetryFailure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("name is not in the declared universe: {0}")]
    NameOutsideUniverse(String),
    #[error("formula variable `{0}` is free but no name constant is given for it")]
    UnboundConstant(Var),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("name mentions condition index {0}, outside the poset")]
    ConditionOutOfRange(usize),
    #[error("malformed name: {0}")]
    BadName(String),
    #[error("not an order automorphism: {0}")]
    NotAutomorphism(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("implementation violation: {0}")]
    Violation(String),
    #[error("budget {what} = {limit} exceeded (needed {needed})")]
    Budget {
        what: &'static str,
        limit: usize,
        needed: String,
    },
    #[error(transparent)]
    Ro(#[from] RoError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Hf(#[from] HfError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

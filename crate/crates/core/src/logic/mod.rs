//! First-order logic of ∈ over finite structures: parsing, satisfaction,
//! definability and the finite `L` hierarchy.

mod automorphism;
pub mod definable;
pub mod formula;
pub mod hierarchy;
pub mod structure;

use thiserror::Error;

use crate::hf::{HFSet, HfError};

pub use automorphism::Permutation;
pub use definable::{
    automorphisms, def_by_depth, def_exact, def_exact_with, definable_elements, depth_types, orbit_formula, orbits,
    relation_automorphisms, relation_def_by_depth, relation_def_exact, DefMode, LogicBudget,
};
pub use formula::{parse_formula, Formula, FormulaError, Var};
pub use hierarchy::{def_step, l_hierarchy, lx_hierarchy};
pub use structure::{defined_indices, defined_set, eval, satisfies, Env, FiniteStructure, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("free variable `{0}` has no value")]
    Unassigned(Var),
    #[error("{0} is not in the domain")]
    NotInDomain(HFSet),
    #[error("expected {expected} free variable(s), found {found}")]
    FreeVarCount { expected: usize, found: usize },
    #[error("duplicate domain member {0}")]
    DuplicateMember(HFSet),
    #[error("budget {what} = {limit} exceeded (needed {needed})")]
    Budget {
        what: &'static str,
        limit: usize,
        needed: String,
    },
    #[error("{0} is not transitive")]
    NotTransitive(HFSet),
    #[error("invalid structure file: {0}")]
    Json(String),
    #[error(transparent)]
    Hf(#[from] HfError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

//! Desk-scale forcing and definability.
//!
//! * [`hf`]: hereditarily finite sets, Ackermann codes, the levels `V_n`.
//! * [`logic`]: formulas over `∈`, satisfaction, `Def`, the levels `L_n`.
//! * [`order`]: forcing posets, density, separativity, separative quotients.
//! * [`roalg`]: regular-open completions and partition refinement.
//! * [`forcing`]: names, Boolean values, the forcing relation, symmetry.
//! * [`generic`]: generic filters by descending chains through dense sets.
//! * [`cli`]: the `forcelab` command line and experiment runner.

pub mod hf;
pub mod logic;
pub mod order;
pub mod roalg;
pub mod forcing;
pub mod generic;
pub mod cli;

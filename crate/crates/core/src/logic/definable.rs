//! Definable subsets of finite structures.
//!
//! Two independent routes:
//!
//! * [`def_exact`]: on a finite structure the parameter-free definable subsets
//!   are exactly the unions of automorphism orbits (each orbit is cut out by a
//!   diagram formula, see [`orbit_formula`]).
//! * [`def_by_depth`]: everything definable by a formula of quantifier depth
//!   at most `d`, enumerated up to semantic equivalence. Formulas of depth `d`
//!   with one free variable only ever mention `x` and the `k` variables bound
//!   on the path to a subformula, so their meanings are generated by atomic
//!   types of `(k+1)`-tuples closed under `∃`; the blocks of that partition of
//!   the domain are the depth-`d` atoms.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::automorphism::{Permutation, Search};
use super::formula::Formula;
use super::structure::{FiniteStructure, Relation};
use super::LogicError;
use crate::hf::HFSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicBudget {
    /// Largest domain handed to the automorphism search.
    pub max_automorphism_domain: usize,
    /// Largest automorphism group [`automorphisms`] will list.
    pub max_automorphisms: usize,
    /// Largest family of subsets a Def computation may return.
    pub max_def_family: usize,
    /// Largest quantifier depth accepted by [`def_by_depth`].
    pub max_depth: usize,
    /// Largest `|domain|^(depth+1)` accepted by [`def_by_depth`].
    pub max_tuples: usize,
}

impl Default for LogicBudget {
    fn default() -> Self {
        LogicBudget {
            max_automorphism_domain: 1 << 12,
            max_automorphisms: 1 << 16,
            max_def_family: 1 << 16,
            max_depth: 4,
            max_tuples: 1 << 22,
        }
    }
}

/// Whether Def may use parameters from the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DefMode {
    #[default]
    ParameterFree,
    /// Every subset of a finite structure is definable from parameters; kept
    /// for comparison.
    WithParameters,
}

fn check_domain(n: usize, budget: &LogicBudget) -> Result<(), LogicError> {
    if n > budget.max_automorphism_domain {
        return Err(LogicError::Budget {
            what: "max_automorphism_domain",
            limit: budget.max_automorphism_domain,
            needed: n.to_string(),
        });
    }
    Ok(())
}

fn check_family(blocks: usize, budget: &LogicBudget) -> Result<(), LogicError> {
    let fits = blocks < usize::BITS as usize && (1usize << blocks) <= budget.max_def_family;
    if !fits {
        return Err(LogicError::Budget {
            what: "max_def_family",
            limit: budget.max_def_family,
            needed: format!("2^{blocks}"),
        });
    }
    Ok(())
}

/// All automorphisms of the relation, sorted, identity first.
pub fn relation_automorphisms(rel: &Relation, budget: &LogicBudget) -> Result<Vec<Permutation>, LogicError> {
    check_domain(rel.size(), budget)?;
    Search::new(rel).all(budget.max_automorphisms).ok_or(LogicError::Budget {
        what: "max_automorphisms",
        limit: budget.max_automorphisms,
        needed: "more".into(),
    })
}

/// Domain permutations of `m` preserving membership in both directions.
pub fn automorphisms(m: &FiniteStructure, budget: &LogicBudget) -> Result<Vec<Permutation>, LogicError> {
    relation_automorphisms(m.relation(), budget)
}

/// Orbits of the automorphism group, listed by least member.
pub fn orbits(rel: &Relation, budget: &LogicBudget) -> Result<Vec<Vec<usize>>, LogicError> {
    check_domain(rel.size(), budget)?;
    Ok(Search::new(rel).orbits())
}

/// Every union of the given blocks, in increasing order of block mask.
fn unions_of(n: usize, blocks: &[Vec<usize>]) -> Vec<FixedBitSet> {
    (0..1usize << blocks.len())
        .map(|mask| {
            let mut s = FixedBitSet::with_capacity(n);
            for (b, block) in blocks.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for &i in block {
                        s.insert(i);
                    }
                }
            }
            s
        })
        .collect()
}

fn sort_family(mut family: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    family.sort_by_cached_key(|s| s.ones().collect::<Vec<_>>());
    family
}

/// Def over an abstract relation.
pub fn relation_def_exact(rel: &Relation, mode: DefMode, budget: &LogicBudget) -> Result<Vec<FixedBitSet>, LogicError> {
    let n = rel.size();
    let blocks = match mode {
        DefMode::WithParameters => (0..n).map(|i| vec![i]).collect(),
        DefMode::ParameterFree => orbits(rel, budget)?,
    };
    check_family(blocks.len(), budget)?;
    Ok(sort_family(unions_of(n, &blocks)))
}

/// `Def(M)`: the parameter-free definable subsets of the domain.
pub fn def_exact(m: &FiniteStructure, budget: &LogicBudget) -> Result<Vec<FixedBitSet>, LogicError> {
    relation_def_exact(m.relation(), DefMode::ParameterFree, budget)
}

pub fn def_exact_with(m: &FiniteStructure, mode: DefMode, budget: &LogicBudget) -> Result<Vec<FixedBitSet>, LogicError> {
    relation_def_exact(m.relation(), mode, budget)
}

/// Partition of the domain into depth-`d` types, blocks listed by least member.
pub fn depth_types(rel: &Relation, d: usize, budget: &LogicBudget) -> Result<Vec<Vec<usize>>, LogicError> {
    if d > budget.max_depth || d > 6 {
        return Err(LogicError::Budget {
            what: "max_depth",
            limit: budget.max_depth.min(6),
            needed: d.to_string(),
        });
    }
    let n = rel.size();
    let tuples = (n as u128).pow(d as u32 + 1);
    if tuples > budget.max_tuples as u128 {
        return Err(LogicError::Budget {
            what: "max_tuples",
            limit: budget.max_tuples,
            needed: tuples.to_string(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let arity = d + 1;
    let atomic = |t: &[usize]| -> u128 {
        let m = t.len();
        let mut bits = 0u128;
        for a in 0..m {
            for b in 0..m {
                if t[a] == t[b] {
                    bits |= 1 << (a * 7 + b);
                }
                if rel.holds(t[a], t[b]) {
                    bits |= 1 << (64 + a * 7 + b);
                }
            }
        }
        bits
    };
    let decode = |mut idx: usize, m: usize| -> Vec<usize> {
        (0..m)
            .map(|_| {
                let v = idx % n;
                idx /= n;
                v
            })
            .collect()
    };

    let width = n.pow(arity as u32);
    let mut ids: HashMap<(u128, Vec<u32>), u32> = HashMap::new();
    let mut colors: Vec<u32> = (0..width)
        .map(|i| {
            let key = (atomic(&decode(i, arity)), Vec::new());
            let next = ids.len() as u32;
            *ids.entry(key).or_insert(next)
        })
        .collect();
    for m in (1..arity).rev() {
        let width = n.pow(m as u32);
        let stride = width;
        ids.clear();
        colors = (0..width)
            .map(|i| {
                let mut ext: Vec<u32> = (0..n).map(|c| colors[i + c * stride]).collect();
                ext.sort_unstable();
                ext.dedup();
                let key = (atomic(&decode(i, m)), ext);
                let next = ids.len() as u32;
                *ids.entry(key).or_insert(next)
            })
            .collect();
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of: HashMap<u32, usize> = HashMap::new();
    for (i, c) in colors.iter().enumerate() {
        let b = *block_of.entry(*c).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(i);
    }
    Ok(blocks)
}

/// Subsets defined by some formula of quantifier depth at most `d`.
pub fn relation_def_by_depth(rel: &Relation, d: usize, budget: &LogicBudget) -> Result<Vec<FixedBitSet>, LogicError> {
    let blocks = depth_types(rel, d, budget)?;
    check_family(blocks.len(), budget)?;
    Ok(sort_family(unions_of(rel.size(), &blocks)))
}

pub fn def_by_depth(m: &FiniteStructure, d: usize, budget: &LogicBudget) -> Result<Vec<FixedBitSet>, LogicError> {
    relation_def_by_depth(m.relation(), d, budget)
}

/// Members `x` such that `{x}` is parameter-free definable.
pub fn definable_elements(m: &FiniteStructure, budget: &LogicBudget) -> Result<Vec<HFSet>, LogicError> {
    let orbits = orbits(m.relation(), budget)?;
    check_family(orbits.len(), budget)?;
    Ok(orbits
        .into_iter()
        .filter(|o| o.len() == 1)
        .map(|o| m.domain()[o[0]].clone())
        .collect())
}

/// A formula in `x` defining the union of `cells` (domain indices), built from
/// the complete diagram of the structure:
///
/// `∃y0..∃y(n-1) (distinct ∧ diagram ∧ ∀z ⋁ z = yi ∧ ⋁_{i ∈ cells} x = yi)`.
///
/// It defines the closure of `cells` under automorphisms, so it defines
/// `cells` exactly when `cells` is a union of orbits.
pub fn orbit_formula(rel: &Relation, cells: &[usize]) -> Formula {
    let n = rel.size();
    let y = |i: usize| format!("y{i}");
    let mut parts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                parts.push(Formula::not(Formula::eq(&y(i), &y(j))));
            }
            let atom = Formula::mem(&y(i), &y(j));
            parts.push(if rel.holds(i, j) { atom } else { Formula::not(atom) });
        }
    }
    if let Some(cover) = Formula::disj((0..n).map(|i| Formula::eq("z", &y(i))).collect()) {
        parts.push(Formula::forall("z", cover));
    }
    let pick = Formula::disj(cells.iter().map(|&i| Formula::eq("x", &y(i))).collect())
        .unwrap_or_else(|| Formula::not(Formula::eq("x", "x")));
    parts.push(pick);
    let body = Formula::conj(parts).expect("at least the selector");
    (0..n).rev().fold(body, |acc, i| Formula::exists(&y(i), acc))
}

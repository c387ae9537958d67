//! Finite stages of the constructible hierarchy.
//!
//! `L_0 = ∅`, `L_{k+1} = L_k ∪ Def(L_k)`, and `L(X)_0 = X` for transitive `X`.
//! Each definable subset of a level is reified directly as the set of its
//! members.

use super::definable::{def_exact, LogicBudget};
use super::structure::FiniteStructure;
use super::LogicError;
use crate::hf::HFSet;

/// `L_{k+1}` from `L_k`, both in code order.
pub fn def_step(level: &[HFSet], budget: &LogicBudget) -> Result<Vec<HFSet>, LogicError> {
    let m = FiniteStructure::new(level.to_vec())?;
    let mut next: Vec<HFSet> = def_exact(&m, budget)?.iter().map(|s| m.reify(s)).collect();
    next.extend(level.iter().cloned());
    next.sort();
    next.dedup();
    Ok(next)
}

fn iterate(start: Vec<HFSet>, n: usize, budget: &LogicBudget) -> Result<Vec<Vec<HFSet>>, LogicError> {
    let mut levels = vec![start];
    for _ in 0..n {
        let next = def_step(levels.last().expect("nonempty"), budget)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Levels `L_0 ..= L_n`.
pub fn l_hierarchy(n: usize, budget: &LogicBudget) -> Result<Vec<Vec<HFSet>>, LogicError> {
    iterate(Vec::new(), n, budget)
}

/// Levels `L(X)_0 ..= L(X)_n`; `x` must be transitive.
pub fn lx_hierarchy(x: &HFSet, n: usize, budget: &LogicBudget) -> Result<Vec<Vec<HFSet>>, LogicError> {
    if !x.is_transitive() {
        return Err(LogicError::NotTransitive(x.clone()));
    }
    iterate(x.elements().to_vec(), n, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{hf_parse, v_level, HfBudget};

    #[test]
    fn small_levels_match_v() {
        let b = LogicBudget::default();
        let l = l_hierarchy(4, &b).unwrap();
        assert_eq!(l[1], vec![HFSet::empty()]);
        let sizes: Vec<usize> = l.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![0, 1, 2, 4, 16]);
        assert_eq!(l[4], v_level(4, &HfBudget::default()).unwrap());
    }

    #[test]
    fn relative_hierarchy() {
        let b = LogicBudget::default();
        assert_eq!(lx_hierarchy(&HFSet::empty(), 3, &b).unwrap(), l_hierarchy(3, &b).unwrap());
        let v2 = HFSet::from_elements(v_level(2, &HfBudget::default()).unwrap());
        let lx = lx_hierarchy(&v2, 2, &b).unwrap();
        assert_eq!(lx[0], v2.elements().to_vec());
        assert!(lx[1].contains(&hf_parse("{{}}").unwrap()));
        assert_eq!(lx[1], v_level(3, &HfBudget::default()).unwrap());
        for w in lx.windows(2) {
            assert!(w[0].iter().all(|x| w[1].contains(x)));
        }
        let bad = hf_parse("{{{}}}").unwrap();
        assert!(matches!(lx_hierarchy(&bad, 1, &b), Err(LogicError::NotTransitive(_))));
    }

    #[test]
    fn sixth_level_is_over_budget() {
        let b = LogicBudget::default();
        let l5 = v_level(5, &HfBudget::default()).unwrap();
        assert!(matches!(def_step(&l5, &b), Err(LogicError::Budget { .. })));
    }
}

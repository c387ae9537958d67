use std::collections::{BTreeSet, HashMap, VecDeque};

use super::context::{ForcingContext, Sentence};
use super::name::{NameCond, PName};
use super::ForcingError;
use crate::order::{FinitePoset, PartialFn};

/// An order automorphism of a finite poset, as a permutation of indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(Vec<usize>);

impl Automorphism {
    pub fn new(poset: &FinitePoset, perm: Vec<usize>) -> Result<Self, ForcingError> {
        let a = Automorphism(perm);
        a.validate(poset)?;
        Ok(a)
    }

    pub fn identity(n: usize) -> Self {
        Automorphism((0..n).collect())
    }

    pub fn perm(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn validate(&self, poset: &FinitePoset) -> Result<(), ForcingError> {
        if poset.is_automorphism(&self.0) {
            Ok(())
        } else {
            Err(ForcingError::NotAutomorphism(format!("{:?}", self.0)))
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Automorphism(inv)
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    /// The formal unit is fixed.
    pub fn apply_cond(&self, c: NameCond) -> NameCond {
        match c {
            NameCond::One => NameCond::One,
            NameCond::At(p) => NameCond::At(self.0.get(p).copied().unwrap_or(p)),
        }
    }

    /// `π{(ẏ, q)} = {(πẏ, πq)}`.
    pub fn apply_name(&self, n: &PName) -> PName {
        n.map_conditions(&|c| self.apply_cond(c))
    }

    /// Moves the name constants; the formula itself is unchanged.
    pub fn apply_sentence(&self, s: &Sentence) -> Sentence {
        Sentence {
            formula: s.formula.clone(),
            constants: s.constants.iter().map(|(v, n)| (v.clone(), self.apply_name(n))).collect(),
        }
    }
}

/// Closes a set of generators under composition.
pub fn group_closure(n: usize, gens: &[Automorphism], max_size: usize) -> Result<Vec<Automorphism>, ForcingError> {
    let mut seen: BTreeSet<Automorphism> = BTreeSet::new();
    let mut queue = VecDeque::from([Automorphism::identity(n)]);
    while let Some(a) = queue.pop_front() {
        if !seen.insert(a.clone()) {
            continue;
        }
        if seen.len() > max_size {
            return Err(ForcingError::Budget {
                what: "max_group",
                limit: max_size,
                needed: format!("more than {max_size}"),
            });
        }
        queue.extend(gens.iter().map(|g| g.compose(&a)));
    }
    Ok(seen.into_iter().collect())
}

fn next_permutation(v: &mut [u64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("suffix has a larger element");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// For a materialized partial-function poset with range `{0..values-1}`, the
/// automorphisms `p ↦ σ ∘ p` for every permutation `σ` of the range, identity
/// first.
pub fn range_automorphisms(
    poset: &FinitePoset,
    conds: &[PartialFn],
    values: u64,
) -> Result<Vec<Automorphism>, ForcingError> {
    let index: HashMap<&PartialFn, usize> = conds.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut sigma: Vec<u64> = (0..values).collect();
    let mut out = Vec::new();
    loop {
        let perm = conds
            .iter()
            .map(|p| {
                let image = PartialFn(p.0.iter().map(|(&x, &v)| (x, sigma[v as usize])).collect());
                index
                    .get(&image)
                    .copied()
                    .ok_or_else(|| ForcingError::NotAutomorphism(format!("{image} is not a condition")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Automorphism::new(poset, perm)?);
        if !next_permutation(&mut sigma) {
            return Ok(out);
        }
    }
}

/// All pairs `(p, q)` such that no `π` in the group makes `πp` compatible
/// with `q`.
pub fn homogeneity_counterexamples(poset: &FinitePoset, group: &[Automorphism]) -> Vec<(usize, usize)> {
    let n = poset.len();
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if !group.iter().any(|g| poset.compatible(g.apply(p), q)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// `Ok` when every pair of conditions can be made compatible by the group;
/// otherwise the first failing pair in index order.
pub fn is_weakly_homogeneous(poset: &FinitePoset, group: &[Automorphism]) -> Result<(), (usize, usize)> {
    for p in 0..poset.len() {
        for q in 0..poset.len() {
            if !group.iter().any(|g| poset.compatible(g.apply(p), q)) {
                return Err((p, q));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryFailure {
    pub condition: usize,
    pub forces: bool,
    pub image_forces: bool,
}

/// Checks `p ⊩ φ(ẋ) ⟺ πp ⊩ φ(πẋ)` for every condition `p`.
pub fn check_symmetry_lemma(
    ctx: &ForcingContext,
    s: &Sentence,
    pi: &Automorphism,
) -> Result<Option<SymmetryFailure>, ForcingError> {
    pi.validate(ctx.poset())?;
    let v = ctx.bool_value(s)?;
    let w = ctx.bool_value(&pi.apply_sentence(s))?;
    let alg = ctx.algebra();
    for p in 0..ctx.poset().len() {
        let forces = alg.embed(p).is_subset(&v);
        let image_forces = alg.embed(pi.apply(p)).is_subset(&w);
        if forces != image_forces {
            return Ok(Some(SymmetryFailure {
                condition: p,
                forces,
                image_forces,
            }));
        }
    }
    Ok(None)
}

/// Under a weakly homogeneous group, a sentence whose constants are all
/// check names has Boolean value 0 or 1; returns whether it is 1.
pub fn homogeneity_zero_one(ctx: &ForcingContext, s: &Sentence) -> Result<bool, ForcingError> {
    let poset = ctx.poset();
    let group = ctx
        .group()
        .ok_or_else(|| ForcingError::Precondition("no automorphism group attached".into()))?;
    if let Err((p, q)) = is_weakly_homogeneous(poset, group) {
        return Err(ForcingError::Precondition(format!(
            "group is not weakly homogeneous: no image of {} is compatible with {}",
            poset.label(p),
            poset.label(q)
        )));
    }
    if let Some(g) = group.iter().find(|g| !ctx.universe().is_closed_under(g)) {
        return Err(ForcingError::Precondition(format!(
            "name universe is not closed under {:?}",
            g.perm()
        )));
    }
    if let Some((v, _)) = s.constants.iter().find(|(_, n)| n.as_check(ctx.unit()).is_none()) {
        return Err(ForcingError::Precondition(format!("constant `{v}` is not a check name")));
    }
    let value = ctx.bool_value(s)?;
    if value == ctx.algebra().one() {
        Ok(true)
    } else if value.is_zero() {
        Ok(false)
    } else {
        Err(ForcingError::Violation(format!(
            "Boolean value {:?} is neither 0 nor 1",
            value.labels(poset)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::ForcingBudget;
    use crate::hf::HFSet;
    use crate::logic::parse_formula;
    use crate::order::{Bound, PartialFnPoset};

    fn materialize(p: PartialFnPoset) -> (FinitePoset, Vec<PartialFn>) {
        p.materialize().unwrap()
    }

    #[test]
    fn value_swap_on_the_small_example() {
        let (poset, conds) = materialize(PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Finite(2)));
        let group = range_automorphisms(&poset, &conds, 2).unwrap();
        assert_eq!(group.len(), 2);
        let swap = &group[1];
        let at = |s: &str| conds.iter().position(|c| c.to_string() == s).unwrap();
        assert_eq!(swap.apply(at("{0:1}")), at("{0:0}"));
        let zero = PName::check(&HFSet::empty(), NameCond::At(0));
        assert_eq!(swap.apply_name(&zero), zero);
        let r = PName::from_pairs([(zero.clone(), NameCond::At(at("{0:1}")))]);
        assert_eq!(
            swap.apply_name(&r),
            PName::from_pairs([(zero.clone(), NameCond::At(at("{0:0}")))])
        );
        let ctx = ForcingContext::new(&poset, [r.clone()], Some(group.clone()), ForcingBudget::default()).unwrap();
        let s = Sentence::new(
            parse_formula("(in a b)").unwrap(),
            [("a".to_string(), zero), ("b".to_string(), r)],
        );
        for g in &group {
            assert_eq!(check_symmetry_lemma(&ctx, &s, g).unwrap(), None);
        }
    }

    #[test]
    fn homogeneity_examples() {
        let (poset, conds) = materialize(PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)));
        assert_eq!(poset.len(), 21);
        let group = range_automorphisms(&poset, &conds, 4).unwrap();
        assert_eq!(group.len(), 24);
        assert_eq!(is_weakly_homogeneous(&poset, &group), Ok(()));

        let (poset, conds) = materialize(PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2)));
        let group = range_automorphisms(&poset, &conds, 2).unwrap();
        let bad = homogeneity_counterexamples(&poset, &group);
        let at = |s: &str| conds.iter().position(|c| c.to_string() == s).unwrap();
        assert!(bad.contains(&(at("{0:0,1:0}"), at("{0:1,1:0}"))));
        let (p, q) = is_weakly_homogeneous(&poset, &group).unwrap_err();
        assert!(bad.contains(&(p, q)));

        let anti = FinitePoset::antichain(2);
        assert!(is_weakly_homogeneous(&anti, &[Automorphism::identity(2)]).is_err());
    }

    #[test]
    fn closure_of_generators() {
        let (poset, conds) = materialize(PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)));
        let group = range_automorphisms(&poset, &conds, 4).unwrap();
        let closed = group_closure(poset.len(), &group[1..3], 100).unwrap();
        assert!(closed.len() > 1 && closed.len() <= 24);
        let full = group_closure(poset.len(), &group, 100).unwrap();
        assert_eq!(full.len(), 24);
        let g = &group[5];
        assert_eq!(g.compose(&g.inverse()), Automorphism::identity(poset.len()));
        assert!(Automorphism::new(&poset, vec![0; poset.len()]).is_err());
    }

    #[test]
    fn zero_one_values() {
        let (poset, conds) = materialize(PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)));
        let group = range_automorphisms(&poset, &conds, 4).unwrap();
        let unit = NameCond::At(poset.maximum().unwrap());
        let g0 = PName::from_pairs(
            conds
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.get(0).map(|v| (PName::check(&HFSet::nat(v as usize), unit), NameCond::At(i)))),
        );
        let two = PName::check(&HFSet::nat(2), unit);
        let zero = PName::check(&HFSet::empty(), unit);
        let ctx = ForcingContext::new(&poset, [g0.clone(), two.clone()], Some(group), ForcingBudget::default()).unwrap();
        let s = |t: &str| {
            Sentence::new(
                parse_formula(t).unwrap(),
                [("a".to_string(), zero.clone()), ("b".to_string(), two.clone())],
            )
        };
        assert!(homogeneity_zero_one(&ctx, &s("(= a a)")).unwrap());
        assert!(!homogeneity_zero_one(&ctx, &s("(in a a)")).unwrap());
        assert!(homogeneity_zero_one(&ctx, &s("(ex y (and (in y b) (ex z (in z y))))")).unwrap());
        let v = homogeneity_zero_one(&ctx, &s("(ex y (and (in a y) (and (not (in y b)) (not (= y b)))))"));
        assert!(v.is_ok());
        let not_check = Sentence::new(parse_formula("(in a b)").unwrap(), [("a".to_string(), zero), ("b".to_string(), g0)]);
        assert!(matches!(homogeneity_zero_one(&ctx, &not_check), Err(ForcingError::Precondition(_))));
    }
}

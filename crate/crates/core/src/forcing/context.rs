use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use super::name::{NameCond, PName};
use super::symmetry::Automorphism;
use super::ForcingError;
use crate::hf::HFSet;
use crate::logic::{Formula, Var};
use crate::order::FinitePoset;
use crate::roalg::{ro_algebra, RegularOpenAlgebra, RegularOpenSet, RoBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcingBudget {
    pub max_universe: usize,
    pub max_check_rank: usize,
    pub ro: RoBudget,
}

impl Default for ForcingBudget {
    fn default() -> Self {
        ForcingBudget {
            max_universe: 4096,
            max_check_rank: 6,
            ro: RoBudget::default(),
        }
    }
}

/// A finite set of names closed under subnames, listed in name order.
#[derive(Debug, Clone, Default)]
pub struct NameUniverse {
    names: Vec<PName>,
    index: HashMap<PName, usize>,
}

impl NameUniverse {
    /// Closes `seeds` under subnames and under the automorphisms in `group`.
    pub fn closure(
        seeds: impl IntoIterator<Item = PName>,
        group: &[Automorphism],
        max_size: usize,
    ) -> Result<Self, ForcingError> {
        let mut done: BTreeSet<PName> = BTreeSet::new();
        let mut stack: Vec<PName> = seeds.into_iter().collect();
        while let Some(n) = stack.pop() {
            if done.contains(&n) {
                continue;
            }
            stack.extend(n.pairs().map(|(m, _)| m.clone()));
            stack.extend(group.iter().map(|g| g.apply_name(&n)));
            done.insert(n);
            if done.len() > max_size {
                return Err(ForcingError::Budget {
                    what: "max_universe",
                    limit: max_size,
                    needed: format!("more than {max_size}"),
                });
            }
        }
        Ok(Self::from_sorted(done.into_iter().collect()))
    }

    /// Every name of rank at most `rank` whose conditions come from `conds`.
    pub fn up_to_rank(conds: &[NameCond], rank: usize, max_size: usize) -> Result<Self, ForcingError> {
        let conds: Vec<NameCond> = conds.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut names = vec![PName::empty()];
        for _ in 0..rank {
            let slots: Vec<(PName, NameCond)> = names
                .iter()
                .flat_map(|n| conds.iter().map(move |c| (n.clone(), *c)))
                .collect();
            if slots.len() >= 63 || (1usize << slots.len()) > max_size {
                return Err(ForcingError::Budget {
                    what: "max_universe",
                    limit: max_size,
                    needed: format!("2^{}", slots.len()),
                });
            }
            names = (0..1usize << slots.len())
                .map(|mask| {
                    PName::from_pairs(
                        slots
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, s)| s.clone()),
                    )
                })
                .collect();
        }
        names.sort();
        Ok(Self::from_sorted(names))
    }

    fn from_sorted(names: Vec<PName>) -> Self {
        let index = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        NameUniverse { names, index }
    }

    pub fn names(&self) -> &[PName] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, n: &PName) -> Option<usize> {
        self.index.get(n).copied()
    }

    pub fn contains(&self, n: &PName) -> bool {
        self.index.contains_key(n)
    }

    pub fn is_closed_under(&self, g: &Automorphism) -> bool {
        self.names.iter().all(|n| self.contains(&g.apply_name(n)))
    }
}

/// A formula whose free variables are interpreted as names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub formula: Formula,
    pub constants: BTreeMap<Var, PName>,
}

impl Sentence {
    pub fn new(formula: Formula, constants: impl IntoIterator<Item = (Var, PName)>) -> Self {
        Sentence {
            formula,
            constants: constants.into_iter().collect(),
        }
    }
}

type Memo = Mutex<HashMap<(usize, usize), RegularOpenSet>>;

/// A separative poset, its regular-open algebra, a closed name universe and
/// an optional automorphism group. Immutable once built; Boolean values of
/// atomic formulas are memoized behind locks, so shared use from several
/// threads gives the same answers as sequential use.
#[derive(Debug)]
pub struct ForcingContext {
    algebra: RegularOpenAlgebra,
    unit: NameCond,
    universe: NameUniverse,
    members: Vec<Vec<(usize, RegularOpenSet)>>,
    group: Option<Vec<Automorphism>>,
    budget: ForcingBudget,
    eq_memo: Memo,
    in_memo: Memo,
}

impl ForcingContext {
    /// Builds the algebra (the poset must be separative) and closes `seeds`
    /// under subnames and the group.
    pub fn new(
        poset: &FinitePoset,
        seeds: impl IntoIterator<Item = PName>,
        group: Option<Vec<Automorphism>>,
        budget: ForcingBudget,
    ) -> Result<Self, ForcingError> {
        let algebra = ro_algebra(poset, &budget.ro)?;
        if let Some(g) = &group {
            for a in g {
                a.validate(poset)?;
            }
        }
        let universe = NameUniverse::closure(seeds, group.as_deref().unwrap_or(&[]), budget.max_universe)?;
        let e_one = algebra.one();
        let mut embeds: HashMap<NameCond, RegularOpenSet> = HashMap::new();
        let mut members = Vec::with_capacity(universe.len());
        for n in universe.names() {
            let mut row = Vec::with_capacity(n.len());
            for (m, c) in n.pairs() {
                let e = match *c {
                    NameCond::One => e_one.clone(),
                    NameCond::At(i) if i < poset.len() => {
                        embeds.entry(*c).or_insert_with(|| algebra.embed(i)).clone()
                    }
                    NameCond::At(i) => return Err(ForcingError::ConditionOutOfRange(i)),
                };
                row.push((universe.index_of(m).expect("universe is closed under subnames"), e));
            }
            members.push(row);
        }
        Ok(ForcingContext {
            unit: poset.maximum().map_or(NameCond::One, NameCond::At),
            algebra,
            universe,
            members,
            group,
            budget,
            eq_memo: Mutex::new(HashMap::new()),
            in_memo: Mutex::new(HashMap::new()),
        })
    }

    /// Context whose universe is every name of rank `≤ rank` over `conds`.
    pub fn with_rank_universe(
        poset: &FinitePoset,
        conds: &[NameCond],
        rank: usize,
        group: Option<Vec<Automorphism>>,
        budget: ForcingBudget,
    ) -> Result<Self, ForcingError> {
        let u = NameUniverse::up_to_rank(conds, rank, budget.max_universe)?;
        Self::new(poset, u.names, group, budget)
    }

    pub fn poset(&self) -> &FinitePoset {
        self.algebra.poset()
    }

    pub fn algebra(&self) -> &RegularOpenAlgebra {
        &self.algebra
    }

    pub fn universe(&self) -> &NameUniverse {
        &self.universe
    }

    pub fn group(&self) -> Option<&[Automorphism]> {
        self.group.as_deref()
    }

    /// The condition used by check names: the maximum, else the formal unit.
    pub fn unit(&self) -> NameCond {
        self.unit
    }

    pub fn check_name(&self, x: &HFSet) -> Result<PName, ForcingError> {
        let r = x.rank() as usize;
        if r > self.budget.max_check_rank {
            return Err(ForcingError::Budget {
                what: "max_check_rank",
                limit: self.budget.max_check_rank,
                needed: r.to_string(),
            });
        }
        Ok(PName::check(x, self.unit))
    }

    /// `e(p)`, the image of a condition in the algebra.
    pub fn embed(&self, c: NameCond) -> RegularOpenSet {
        match c {
            NameCond::One => self.algebra.one(),
            NameCond::At(p) => self.algebra.embed(p),
        }
    }

    fn idx(&self, n: &PName) -> Result<usize, ForcingError> {
        self.universe
            .index_of(n)
            .ok_or_else(|| ForcingError::NameOutsideUniverse(n.render(self.poset())))
    }

    fn memo_get(memo: &Memo, key: (usize, usize)) -> Option<RegularOpenSet> {
        memo.lock().unwrap_or_else(|e| e.into_inner()).get(&key).cloned()
    }

    fn memo_put(memo: &Memo, key: (usize, usize), v: &RegularOpenSet) {
        memo.lock().unwrap_or_else(|e| e.into_inner()).insert(key, v.clone());
    }

    /// `‖x ∈ y‖ = ⋁_{(z,q) ∈ y} e(q) ∧ ‖x = z‖`.
    fn mem(&self, x: usize, y: usize) -> RegularOpenSet {
        if let Some(v) = Self::memo_get(&self.in_memo, (x, y)) {
            return v;
        }
        let parts: Vec<RegularOpenSet> = self.members[y]
            .iter()
            .map(|(z, e)| self.algebra.meet(e, &self.eq(x, *z)))
            .collect();
        let v = self.algebra.join_all(&parts);
        Self::memo_put(&self.in_memo, (x, y), &v);
        v
    }

    /// `‖x ⊆ y‖ = ⋀_{(z,q) ∈ x} (e(q) ⇒ ‖z ∈ y‖)`.
    fn sub(&self, x: usize, y: usize) -> RegularOpenSet {
        let parts: Vec<RegularOpenSet> = self.members[x]
            .iter()
            .map(|(z, e)| self.algebra.join(&self.algebra.complement(e), &self.mem(*z, y)))
            .collect();
        self.algebra.meet_all(&parts)
    }

    fn eq(&self, x: usize, y: usize) -> RegularOpenSet {
        if x == y {
            return self.algebra.one();
        }
        let key = (x.min(y), x.max(y));
        if let Some(v) = Self::memo_get(&self.eq_memo, key) {
            return v;
        }
        let v = self.algebra.meet(&self.sub(x, y), &self.sub(y, x));
        Self::memo_put(&self.eq_memo, key, &v);
        v
    }

    fn value(&self, phi: &Formula, env: &mut Vec<(Var, usize)>) -> Result<RegularOpenSet, ForcingError> {
        let look = |env: &[(Var, usize)], v: &Var| {
            env.iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, i)| *i)
                .ok_or_else(|| ForcingError::UnboundConstant(v.clone()))
        };
        let a = &self.algebra;
        Ok(match phi {
            Formula::Eq(x, y) => self.eq(look(env, x)?, look(env, y)?),
            Formula::In(x, y) => self.mem(look(env, x)?, look(env, y)?),
            Formula::Not(f) => a.complement(&self.value(f, env)?),
            Formula::And(f, g) => a.meet(&self.value(f, env)?, &self.value(g, env)?),
            Formula::Or(f, g) => a.join(&self.value(f, env)?, &self.value(g, env)?),
            Formula::Imp(f, g) => a.join(&a.complement(&self.value(f, env)?), &self.value(g, env)?),
            Formula::Iff(f, g) => {
                let (u, v) = (self.value(f, env)?, self.value(g, env)?);
                a.meet(
                    &a.join(&a.complement(&u), &v),
                    &a.join(&a.complement(&v), &u),
                )
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                let mut parts = Vec::with_capacity(self.universe.len());
                for i in 0..self.universe.len() {
                    env.push((x.clone(), i));
                    let v = self.value(f, env);
                    env.pop();
                    parts.push(v?);
                }
                if matches!(phi, Formula::Exists(..)) {
                    a.join_all(&parts)
                } else {
                    a.meet_all(&parts)
                }
            }
        })
    }

    /// `‖φ‖` with the free variables of φ read as the given names.
    pub fn bool_value(&self, s: &Sentence) -> Result<RegularOpenSet, ForcingError> {
        let mut env = Vec::new();
        for v in s.formula.free_vars() {
            let n = s.constants.get(&v).ok_or_else(|| ForcingError::UnboundConstant(v.clone()))?;
            env.push((v, self.idx(n)?));
        }
        self.value(&s.formula, &mut env)
    }

    /// `p ⊩ φ` iff `e(p) ≤ ‖φ‖`.
    pub fn forces(&self, p: NameCond, s: &Sentence) -> Result<bool, ForcingError> {
        let v = self.bool_value(s)?;
        Ok(self.embed(p).is_subset(&v))
    }

    /// Every condition forcing the sentence.
    pub fn forcing_conditions(&self, s: &Sentence) -> Result<Vec<usize>, ForcingError> {
        let v = self.bool_value(s)?;
        Ok((0..self.poset().len()).filter(|&p| self.algebra.embed(p).is_subset(&v)).collect())
    }
}

/// `Γ = {(p̌, p) : p ∈ P}`, with `p̌` the check name of the condition's code.
pub fn canonical_generic_name(ctx: &ForcingContext) -> Result<PName, ForcingError> {
    let poset = ctx.poset();
    (0..poset.len())
        .map(|p| Ok((ctx.check_name(poset.code(p))?, NameCond::At(p))))
        .collect::<Result<Vec<_>, ForcingError>>()
        .map(PName::from_pairs)
}

#[cfg(test)]
mod tests {
    use fixedbitset::FixedBitSet;

    use super::*;
    use crate::forcing::eval_name;
    use crate::hf::hf_parse;
    use crate::logic::parse_formula;
    use crate::order::{Bound, PartialFnPoset};

    fn sentence(text: &str, consts: &[(&str, &PName)]) -> Sentence {
        Sentence::new(
            parse_formula(text).unwrap(),
            consts.iter().map(|(v, n)| (v.to_string(), (*n).clone())),
        )
    }

    /// fin_partial({0},{0,1}): 0 = {}, 1 = {0:0}, 2 = {0:1}.
    fn small() -> (FinitePoset, PName, PName) {
        let (poset, conds) = PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Finite(2))
            .materialize()
            .unwrap();
        assert_eq!(conds.len(), 3);
        let zero = PName::check(&HFSet::empty(), NameCond::At(0));
        let r = PName::from_pairs([(zero.clone(), NameCond::At(2))]);
        (poset, zero, r)
    }

    #[test]
    fn one_step_membership() {
        let (poset, zero, r) = small();
        let ctx = ForcingContext::new(&poset, [r.clone()], None, ForcingBudget::default()).unwrap();
        let s = sentence("(in a b)", &[("a", &zero), ("b", &r)]);
        assert_eq!(ctx.bool_value(&s).unwrap(), ctx.algebra().embed(2));
        assert!(ctx.forces(NameCond::At(2), &s).unwrap());
        assert!(!ctx.forces(NameCond::At(0), &s).unwrap());
        assert!(!ctx.forces(NameCond::At(1), &s).unwrap());
        let refl = sentence("(= a a)", &[("a", &zero)]);
        assert!((0..3).all(|p| ctx.forces(NameCond::At(p), &refl).unwrap()));
    }

    #[test]
    fn check_values() {
        let (poset, zero, _) = small();
        let one = PName::check(&hf_parse("{{}}").unwrap(), NameCond::At(0));
        let ctx = ForcingContext::new(&poset, [one.clone()], None, ForcingBudget::default()).unwrap();
        assert_eq!(ctx.check_name(&hf_parse("{{}}").unwrap()).unwrap(), one);
        let v = |t: &str| ctx.bool_value(&sentence(t, &[("a", &zero), ("b", &one)])).unwrap();
        assert_eq!(v("(in a a)"), ctx.algebra().zero());
        assert_eq!(v("(in a b)"), ctx.algebra().one());
        assert_eq!(v("(= b b)"), ctx.algebra().one());
        assert_eq!(v("(ex x (in x b))"), ctx.algebra().one());
        assert_eq!(v("(all x (not (in x a)))"), ctx.algebra().one());
    }

    #[test]
    fn rejects_foreign_names_and_free_variables() {
        let (poset, zero, r) = small();
        let ctx = ForcingContext::new(&poset, [zero.clone()], None, ForcingBudget::default()).unwrap();
        assert!(matches!(
            ctx.bool_value(&sentence("(in a b)", &[("a", &zero), ("b", &r)])),
            Err(ForcingError::NameOutsideUniverse(_))
        ));
        assert!(matches!(
            ctx.bool_value(&sentence("(in a b)", &[("a", &zero)])),
            Err(ForcingError::UnboundConstant(_))
        ));
    }

    #[test]
    fn rank_universe_sizes() {
        let c = [NameCond::At(0), NameCond::At(1)];
        assert_eq!(NameUniverse::up_to_rank(&c, 0, 100).unwrap().len(), 1);
        assert_eq!(NameUniverse::up_to_rank(&c, 1, 100).unwrap().len(), 4);
        assert_eq!(NameUniverse::up_to_rank(&c, 2, 1000).unwrap().len(), 256);
        assert!(NameUniverse::up_to_rank(&c, 2, 100).is_err());
    }

    #[test]
    fn generic_name_evaluates_to_the_filter() {
        let poset = FinitePoset::antichain(2);
        let ctx = ForcingContext::new(&poset, [], None, ForcingBudget::default()).unwrap();
        assert_eq!(ctx.unit(), NameCond::One);
        let gamma = canonical_generic_name(&ctx).unwrap();
        let mut g = FixedBitSet::with_capacity(2);
        g.insert(1);
        assert_eq!(eval_name(&gamma, &g), HFSet::from_elements([poset.code(1).clone()]));
        g.insert(0);
        assert_eq!(eval_name(&gamma, &g), HFSet::from_elements(poset.codes().iter().cloned()));

        let one = FinitePoset::chain(1);
        let ctx = ForcingContext::new(&one, [], None, ForcingBudget::default()).unwrap();
        let mut g = FixedBitSet::with_capacity(1);
        g.insert(0);
        assert_eq!(
            eval_name(&canonical_generic_name(&ctx).unwrap(), &g),
            HFSet::from_elements([one.code(0).clone()])
        );
    }
}

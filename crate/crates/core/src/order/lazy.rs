//! Countable posets with finite conditions, presented lazily.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::finite::{FinitePoset, Splitting};
use super::OrderError;
use crate::hf::HFSet;

/// A forcing poset whose conditions are finite, encodable values with a
/// decidable order and a deterministic, duplicate-free enumeration.
pub trait LazyPoset {
    type Cond: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display;

    fn leq(&self, p: &Self::Cond, q: &Self::Cond) -> bool;

    fn compatible(&self, p: &Self::Cond, q: &Self::Cond) -> bool;

    /// The largest condition, if there is one.
    fn top(&self) -> Option<Self::Cond>;

    /// Conditions in a fixed order. A fresh call starts a fresh cursor.
    fn conditions(&self) -> Box<dyn Iterator<Item = Self::Cond> + '_>;

    /// Two incompatible extensions of `p`, when the poset knows a
    /// structural way to produce them.
    fn split(&self, _p: &Self::Cond) -> Option<(Self::Cond, Self::Cond)> {
        None
    }

    fn encode(&self, p: &Self::Cond) -> HFSet;
}

/// Checks splitting on the first `prefix` conditions, searching the first
/// `search` enumerated conditions for extensions when no structural split is
/// known.
pub fn has_splitting_prefix<P: LazyPoset>(poset: &P, prefix: usize, search: usize) -> Splitting<P::Cond> {
    let pool: Vec<P::Cond> = poset.conditions().take(search.saturating_add(1)).collect();
    let complete = pool.len() <= search;
    for p in poset.conditions().take(prefix) {
        if let Some((r, q)) = poset.split(&p) {
            if poset.leq(&r, &p) && poset.leq(&q, &p) && !poset.compatible(&r, &q) {
                continue;
            }
        }
        let ext: Vec<&P::Cond> = pool.iter().take(search).filter(|r| poset.leq(r, &p)).collect();
        let found = ext.iter().any(|r| ext.iter().any(|q| !poset.compatible(r, q)));
        if !found {
            return if complete {
                Splitting::Fails(p)
            } else {
                Splitting::Undecided(p)
            };
        }
    }
    Splitting::Holds
}

impl LazyPoset for FinitePoset {
    type Cond = usize;

    fn leq(&self, p: &usize, q: &usize) -> bool {
        FinitePoset::leq(self, *p, *q)
    }

    fn compatible(&self, p: &usize, q: &usize) -> bool {
        FinitePoset::compatible(self, *p, *q)
    }

    fn top(&self) -> Option<usize> {
        self.maximum()
    }

    fn conditions(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        Box::new(0..self.len())
    }

    fn encode(&self, p: &usize) -> HFSet {
        self.code(*p).clone()
    }
}

/// `{0, ..., n-1}` or `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u64),
    Omega,
}

impl Bound {
    pub fn contains(&self, x: u64) -> bool {
        match self {
            Bound::Finite(n) => x < *n,
            Bound::Omega => true,
        }
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Bound::Finite(n) => Some(*n),
            Bound::Omega => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Omega => f.write_str("w"),
        }
    }
}

/// A finite partial function on the naturals, written `{0:1,3:0}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFn(pub BTreeMap<u64, u64>);

impl PartialFn {
    pub fn empty() -> Self {
        PartialFn::default()
    }

    pub fn get(&self, x: u64) -> Option<u64> {
        self.0.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_range(&self, v: u64) -> bool {
        self.0.values().any(|&w| w == v)
    }

    pub fn with(&self, x: u64, v: u64) -> PartialFn {
        let mut m = self.0.clone();
        m.insert(x, v);
        PartialFn(m)
    }

    pub fn extends(&self, other: &PartialFn) -> bool {
        other.0.iter().all(|(k, v)| self.0.get(k) == Some(v))
    }

    pub fn is_injective(&self) -> bool {
        let mut vals: Vec<u64> = self.0.values().copied().collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    /// The set of Kuratowski pairs `(x, v)` of von Neumann naturals.
    pub fn encode(&self) -> HFSet {
        HFSet::from_elements(
            self.0
                .iter()
                .map(|(&x, &v)| HFSet::kpair(HFSet::nat(x as usize), HFSet::nat(v as usize))),
        )
    }
}

impl<const N: usize> From<[(u64, u64); N]> for PartialFn {
    fn from(pairs: [(u64, u64); N]) -> Self {
        PartialFn(pairs.into_iter().collect())
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}:{v}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for PartialFn {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrderError::BadCondition(s.to_string());
        let inner = s.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(bad)?;
        let mut m = BTreeMap::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (x, v) = part.split_once(':').ok_or_else(bad)?;
            let x: u64 = x.trim().parse().map_err(|_| bad())?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            if m.insert(x, v).is_some() {
                return Err(bad());
            }
        }
        Ok(PartialFn(m))
    }
}

/// Finite partial functions from a domain bound to a range bound, ordered by
/// reverse inclusion, optionally required to be one-to-one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFnPoset {
    pub domain: Bound,
    pub range: Bound,
    pub injective: bool,
    /// For countability-witness posets, the set whose members index the domain.
    pub witness_set: Option<HFSet>,
}

impl PartialFnPoset {
    /// Cohen forcing: partial functions `ω → {0..values-1}` (or from a finite
    /// domain when `domain_bound` is given).
    pub fn cohen(domain_bound: Option<u64>, values: u64) -> Result<Self, OrderError> {
        if values == 0 {
            return Err(OrderError::InvalidParams("cohen needs at least one value".into()));
        }
        Ok(PartialFnPoset {
            domain: domain_bound.map_or(Bound::Omega, Bound::Finite),
            range: Bound::Finite(values),
            injective: false,
            witness_set: None,
        })
    }

    pub fn fin_partial(domain: Bound, range: Bound) -> Self {
        PartialFnPoset {
            domain,
            range,
            injective: false,
            witness_set: None,
        }
    }

    pub fn fin_inj(domain: Bound, range: Bound) -> Self {
        PartialFnPoset {
            domain,
            range,
            injective: true,
            witness_set: None,
        }
    }

    /// Finite partial injections from the members of `s` (by code order) into ω.
    pub fn countability_witness(s: &HFSet) -> Self {
        PartialFnPoset {
            domain: Bound::Finite(s.len() as u64),
            range: Bound::Omega,
            injective: true,
            witness_set: Some(s.clone()),
        }
    }

    pub fn is_condition(&self, p: &PartialFn) -> bool {
        p.0.iter().all(|(&x, &v)| self.domain.contains(x) && self.range.contains(v)) && (!self.injective || p.is_injective())
    }

    pub fn name(&self) -> String {
        if let Some(s) = &self.witness_set {
            return format!("countability_witness({s})");
        }
        let kind = if self.injective { "fin_inj" } else { "fin_partial" };
        format!("{kind}({}, {})", self.domain, self.range)
    }

    /// Conditions whose largest mentioned number is exactly `stage - 1`
    /// (stage 0 holds only the empty function), in canonical order.
    fn stage(&self, stage: u64) -> Vec<PartialFn> {
        if stage == 0 {
            return vec![PartialFn::empty()];
        }
        let dom_n = self.domain.finite().map_or(stage, |d| d.min(stage));
        let ran_n = self.range.finite().map_or(stage, |r| r.min(stage));
        let mut out = Vec::new();
        // each domain point is unmapped (code 0) or mapped to value (code v+1)
        let mut digits = vec![0u64; dom_n as usize];
        loop {
            let f = PartialFn(
                digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(x, &d)| (x as u64, d - 1))
                    .collect(),
            );
            let height = f.0.iter().map(|(&x, &v)| x.max(v) + 1).max().unwrap_or(0);
            if height == stage && self.is_condition(&f) {
                out.push(f);
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                    return out;
                }
                digits[i] += 1;
                if digits[i] <= ran_n {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// Materializes a finite instance. Conditions are ordered by size, then
    /// lexicographically, and carry their Kuratowski-pair encodings as codes;
    /// the returned vector maps indices to conditions.
    pub fn materialize(&self) -> Result<(FinitePoset, Vec<PartialFn>), OrderError> {
        let (Some(_), Some(_)) = (self.domain.finite(), self.range.finite()) else {
            return Err(OrderError::Infinite(self.name()));
        };
        let mut conds: Vec<PartialFn> = self.conditions().collect();
        conds.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let labels = conds.iter().map(ToString::to_string).collect();
        let codes = conds.iter().map(PartialFn::encode).collect();
        let poset = FinitePoset::from_fn(labels, |p, q| conds[p].extends(&conds[q]))?.with_codes(codes)?;
        Ok((poset, conds))
    }
}

impl LazyPoset for PartialFnPoset {
    type Cond = PartialFn;

    fn leq(&self, p: &PartialFn, q: &PartialFn) -> bool {
        p.extends(q)
    }

    fn compatible(&self, p: &PartialFn, q: &PartialFn) -> bool {
        let agree = p.0.iter().all(|(k, v)| q.0.get(k).is_none_or(|w| w == v));
        if !agree || !self.injective {
            return agree;
        }
        let mut union = p.0.clone();
        union.extend(q.0.iter().map(|(&k, &v)| (k, v)));
        PartialFn(union).is_injective()
    }

    fn top(&self) -> Option<PartialFn> {
        Some(PartialFn::empty())
    }

    fn conditions(&self) -> Box<dyn Iterator<Item = PartialFn> + '_> {
        let last_stage = match (self.domain.finite(), self.range.finite()) {
            (Some(d), Some(r)) => Some(d.max(r)),
            _ => None,
        };
        Box::new(
            (0u64..)
                .take_while(move |s| last_stage.is_none_or(|l| *s <= l))
                .flat_map(move |s| self.stage(s)),
        )
    }

    fn split(&self, p: &PartialFn) -> Option<(PartialFn, PartialFn)> {
        let x = (0u64..)
            .take_while(|x| self.domain.contains(*x))
            .find(|x| !p.0.contains_key(x))?;
        let mut values = (0u64..)
            .take_while(|v| self.range.contains(*v))
            .filter(|v| !self.injective || !p.in_range(*v));
        let a = values.next()?;
        let b = values.next()?;
        Some((p.with(x, a), p.with(x, b)))
    }

    fn encode(&self, p: &PartialFn) -> HFSet {
        p.encode()
    }
}

/// Why a refiner could not produce an extension.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("{0} has no extension in {1}")]
    NoExtension(String, String),
}

type Membership<C> = Arc<dyn Fn(&C) -> bool + Send + Sync>;
type Refiner<C> = Arc<dyn Fn(&C) -> Result<C, RefineError> + Send + Sync>;

/// A dense set together with a procedure that moves any condition into it.
#[derive(Clone)]
pub struct DenseSpec<C> {
    pub name: String,
    contains: Membership<C>,
    refine: Refiner<C>,
}

impl<C> fmt::Debug for DenseSpec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseSpec").field("name", &self.name).finish()
    }
}

impl<C> DenseSpec<C> {
    pub fn new(
        name: impl Into<String>,
        contains: impl Fn(&C) -> bool + Send + Sync + 'static,
        refine: impl Fn(&C) -> Result<C, RefineError> + Send + Sync + 'static,
    ) -> Self {
        DenseSpec {
            name: name.into(),
            contains: Arc::new(contains),
            refine: Arc::new(refine),
        }
    }

    pub fn contains(&self, p: &C) -> bool {
        (self.contains)(p)
    }

    pub fn refine(&self, p: &C) -> Result<C, RefineError> {
        (self.refine)(p)
    }
}

impl DenseSpec<usize> {
    /// An explicit subset of a finite poset; the refiner picks the
    /// least-indexed member below the given condition.
    pub fn from_subset(poset: &FinitePoset, name: impl Into<String>, subset: FixedBitSet) -> Self {
        let name = name.into();
        let below: Vec<FixedBitSet> = (0..poset.len()).map(|p| poset.below(p).clone()).collect();
        let labels: Vec<String> = poset.labels().to_vec();
        let members = subset.clone();
        let set_name = name.clone();
        DenseSpec::new(
            name,
            move |p: &usize| members.contains(*p),
            move |p: &usize| {
                below[*p]
                    .intersection(&subset)
                    .next()
                    .ok_or_else(|| RefineError::NoExtension(labels[*p].clone(), set_name.clone()))
            },
        )
    }
}

/// The standard dense families on partial-function posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefinerKind {
    /// `D_a = {p : a ∈ dom p}` for each `a` in the inclusive range.
    Domains(u64, u64),
    /// `D_r = {p : r ∈ ran p}` for each listed `r`.
    Ranges(Vec<u64>),
    /// `D_a` for every point of a finite domain.
    Totality,
}

impl FromStr for RefinerKind {
    type Err = OrderError;

    /// `domains:LO..HI`, `ranges:R1,R2,...` or `totality`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrderError::InvalidParams(format!("bad dense family `{s}`"));
        if s == "totality" {
            return Ok(RefinerKind::Totality);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "domains" => {
                let (lo, hi) = arg.split_once("..").ok_or_else(bad)?;
                let lo = lo.trim().parse().map_err(|_| bad())?;
                let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                Ok(RefinerKind::Domains(lo, hi))
            }
            "ranges" => arg
                .split(',')
                .map(|v| v.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()
                .map(RefinerKind::Ranges),
            _ => Err(bad()),
        }
    }
}

fn domain_refiner(poset: &PartialFnPoset, a: u64, name: String) -> DenseSpec<PartialFn> {
    let range = poset.range;
    let injective = poset.injective;
    let set_name = name.clone();
    DenseSpec::new(
        name,
        move |p: &PartialFn| p.0.contains_key(&a),
        move |p: &PartialFn| {
            if p.0.contains_key(&a) {
                return Ok(p.clone());
            }
            (0u64..)
                .take_while(|v| range.contains(*v))
                .find(|v| !injective || !p.in_range(*v))
                .map(|v| p.with(a, v))
                .ok_or_else(|| RefineError::NoExtension(p.to_string(), set_name.clone()))
        },
    )
}

fn range_refiner(poset: &PartialFnPoset, r: u64) -> DenseSpec<PartialFn> {
    let domain = poset.domain;
    let name = format!("D_ran{r}");
    let set_name = name.clone();
    DenseSpec::new(
        name,
        move |p: &PartialFn| p.in_range(r),
        move |p: &PartialFn| {
            if p.in_range(r) {
                return Ok(p.clone());
            }
            (0u64..)
                .take_while(|x| domain.contains(*x))
                .find(|x| !p.0.contains_key(x))
                .map(|x| p.with(x, r))
                .ok_or_else(|| RefineError::NoExtension(p.to_string(), set_name.clone()))
        },
    )
}

/// Refiners for the standard dense families. Each refiner returns its input
/// when already inside the set and otherwise the least one-point extension
/// (least value for domains, least fresh point for ranges).
pub fn standard_refiners(poset: &PartialFnPoset, kind: &RefinerKind) -> Result<Vec<DenseSpec<PartialFn>>, OrderError> {
    match kind {
        RefinerKind::Domains(lo, hi) => {
            if lo > hi {
                return Err(OrderError::InvalidParams(format!("empty range {lo}..{hi}")));
            }
            if !poset.domain.contains(*hi) {
                return Err(OrderError::InvalidParams(format!("{hi} is outside the domain {}", poset.domain)));
            }
            Ok((*lo..=*hi).map(|a| domain_refiner(poset, a, format!("D_{a}"))).collect())
        }
        RefinerKind::Ranges(values) => {
            if let Some(v) = values.iter().find(|v| !poset.range.contains(**v)) {
                return Err(OrderError::InvalidParams(format!("{v} is outside the range {}", poset.range)));
            }
            Ok(values.iter().map(|&r| range_refiner(poset, r)).collect())
        }
        RefinerKind::Totality => {
            let n = poset
                .domain
                .finite()
                .ok_or_else(|| OrderError::InvalidParams("totality needs a finite domain".into()))?;
            Ok((0..n)
                .map(|a| {
                    let name = match &poset.witness_set {
                        Some(s) => format!("D_{}", s.elements()[a as usize]),
                        None => format!("D_{a}"),
                    };
                    domain_refiner(poset, a, name)
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf<const N: usize>(pairs: [(u64, u64); N]) -> PartialFn {
        PartialFn::from(pairs)
    }

    #[test]
    fn standard_poset_sizes() {
        let (p, _) = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2)).materialize().unwrap();
        assert_eq!(p.len(), 9);
        let (p, _) = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)).materialize().unwrap();
        assert_eq!(p.len(), 21);
        let (p, conds) = PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Finite(2)).materialize().unwrap();
        assert_eq!(conds, vec![PartialFn::empty(), pf([(0, 0)]), pf([(0, 1)])]);
        assert_eq!(p.labels(), &["{}", "{0:0}", "{0:1}"]);
        assert!(PartialFnPoset::cohen(None, 2).unwrap().materialize().is_err());
    }

    #[test]
    fn cohen_order_and_compatibility() {
        let c = PartialFnPoset::cohen(None, 2).unwrap();
        assert!(c.leq(&pf([(0, 1)]), &PartialFn::empty()));
        assert!(c.compatible(&pf([(0, 1)]), &pf([(1, 0)])));
        assert!(!c.compatible(&pf([(0, 1)]), &pf([(0, 0)])));
        assert!(c.compatible(&pf([(0, 1)]), &pf([(0, 1)])));
        let inj = PartialFnPoset::fin_inj(Bound::Omega, Bound::Omega);
        assert!(!inj.compatible(&pf([(0, 3)]), &pf([(1, 3)])));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        let c = PartialFnPoset::cohen(None, 2).unwrap();
        let prefix: Vec<PartialFn> = c.conditions().take(300).collect();
        let mut sorted = prefix.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 300);
        assert!(prefix.iter().all(|p| c.is_condition(p)));
        assert_eq!(prefix[0], PartialFn::empty());
        let finite = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4));
        assert_eq!(finite.conditions().count(), 21);
    }

    #[test]
    fn lazy_splitting() {
        let c = PartialFnPoset::cohen(None, 2).unwrap();
        assert_eq!(has_splitting_prefix(&c, 100, 200), Splitting::Holds);
        let one = PartialFnPoset::cohen(Some(2), 1).unwrap();
        assert_eq!(has_splitting_prefix(&one, 10, 100), Splitting::Fails(PartialFn::empty()));
        // domain bound 1, range ω: {0:v} cannot split, and ω never runs out
        let tall = PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Omega);
        assert_eq!(has_splitting_prefix(&tall, 3, 50), Splitting::Undecided(pf([(0, 0)])));
        assert_eq!(has_splitting_prefix(&FinitePoset::chain(2), 2, 10), Splitting::Fails(0));
    }

    #[test]
    fn refiner_examples() {
        let c = PartialFnPoset::cohen(None, 2).unwrap();
        let rs = standard_refiners(&c, &RefinerKind::Domains(0, 2)).unwrap();
        assert_eq!(rs.len(), 3);
        assert_eq!(rs[1].refine(&PartialFn::empty()).unwrap(), pf([(1, 0)]));
        let inj = PartialFnPoset::fin_inj(Bound::Omega, Bound::Omega);
        let rs = standard_refiners(&inj, &RefinerKind::Ranges(vec![5])).unwrap();
        let q = rs[0].refine(&pf([(0, 2)])).unwrap();
        assert_eq!(q, pf([(0, 2), (1, 5)]));
        let w = PartialFnPoset::countability_witness(&HFSet::empty());
        assert!(standard_refiners(&w, &RefinerKind::Totality).unwrap().is_empty());
        // injective with a tiny range: D_1 is not dense and the refiner says so
        let tight = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(1));
        let rs = standard_refiners(&tight, &RefinerKind::Domains(1, 1)).unwrap();
        assert!(rs[0].refine(&pf([(0, 0)])).is_err());
        assert!(standard_refiners(&c, &RefinerKind::Ranges(vec![2])).is_err());
    }

    #[test]
    fn refiner_kinds_parse() {
        assert_eq!("domains:0..4".parse::<RefinerKind>().unwrap(), RefinerKind::Domains(0, 4));
        assert_eq!("ranges:5,7".parse::<RefinerKind>().unwrap(), RefinerKind::Ranges(vec![5, 7]));
        assert_eq!("totality".parse::<RefinerKind>().unwrap(), RefinerKind::Totality);
        assert!("domains:4".parse::<RefinerKind>().is_err());
    }

    #[test]
    fn partial_fn_text() {
        let p: PartialFn = "{0:1, 3:0}".parse().unwrap();
        assert_eq!(p, pf([(0, 1), (3, 0)]));
        assert_eq!(p.to_string(), "{0:1,3:0}");
        assert!("{0:1,0:2}".parse::<PartialFn>().is_err());
        assert_eq!("{}".parse::<PartialFn>().unwrap(), PartialFn::empty());
    }

    #[test]
    fn subset_refiner_takes_least_member_below() {
        let t = FinitePoset::top_two_atoms();
        let mut d = FixedBitSet::with_capacity(3);
        d.insert(1);
        d.insert(2);
        let spec = DenseSpec::from_subset(&t, "atoms", d);
        assert_eq!(spec.refine(&0).unwrap(), 1);
        assert_eq!(spec.refine(&2).unwrap(), 2);
        assert!(spec.contains(&1));
        assert!(!spec.contains(&0));
    }
}

//! Regular-open completion of a finite separative poset.
//!
//! A set `S` of conditions is regular open when it is downward closed and
//! contains every `p` all of whose extensions have an extension in `S`. These
//! sets form a Boolean algebra under intersection, the regular-open closure of
//! union, and `¬S = {p : no q ≤ p lies in S}`. Regular open sets are stored
//! extensionally as bitsets over the conditions.
//!
//! For a finite separative poset the algebra is atomic with one atom `{m}` per
//! minimal condition `m`, and `S ↦ S ∩ minimal` is an isomorphism onto the
//! powerset of the minimal conditions. [`ro_algebra`] enumerates through that
//! correspondence; tests compare it against a brute-force scan of all subsets.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::order::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoError {
    #[error("poset is not separative: {p} ≰ {q} yet every extension of {p} is compatible with {q}; take the separative quotient first")]
    NotSeparative { p: String, q: String },
    #[error("budget {what} = {limit} exceeded (needed {needed})")]
    Budget {
        what: &'static str,
        limit: usize,
        needed: String,
    },
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a regular open set: {0}")]
    NotRegularOpen(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoBudget {
    pub max_conditions: usize,
    pub max_elements: usize,
}

impl Default for RoBudget {
    fn default() -> Self {
        RoBudget {
            max_conditions: 256,
            max_elements: 1 << 16,
        }
    }
}

/// A regular open set of conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularOpenSet(FixedBitSet);

impl RegularOpenSet {
    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_clear()
    }

    pub fn conditions(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_subset(&self, other: &RegularOpenSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn labels(&self, poset: &FinitePoset) -> Vec<String> {
        self.0.ones().map(|p| poset.label(p).to_string()).collect()
    }
}

fn downward_closure(poset: &FinitePoset, s: &FixedBitSet) -> FixedBitSet {
    let mut d = FixedBitSet::with_capacity(poset.len());
    for p in s.ones() {
        d.union_with(poset.below(p));
    }
    d
}

/// Smallest regular open superset of the downward closure of `s`.
pub fn ro_closure(poset: &FinitePoset, s: &FixedBitSet) -> RegularOpenSet {
    let d = downward_closure(poset, s);
    let mut out = FixedBitSet::with_capacity(poset.len());
    for p in 0..poset.len() {
        let dense_below = poset.below(p).ones().all(|r| !poset.below(r).is_disjoint(&d));
        out.set(p, dense_below);
    }
    RegularOpenSet(out)
}

/// Both clauses of the definition, checked literally.
pub fn is_regular_open(poset: &FinitePoset, s: &FixedBitSet) -> bool {
    let n = poset.len();
    let downward = s.ones().all(|p| poset.below(p).is_subset(s));
    let regular = (0..n).all(|p| {
        let cofinal = poset.below(p).ones().all(|r| poset.below(r).ones().any(|q| s.contains(q)));
        !cofinal || s.contains(p)
    });
    downward && regular
}

/// The algebra `r.o.(P)`, elements listed by size then members.
#[derive(Debug, Clone)]
pub struct RegularOpenAlgebra {
    poset: FinitePoset,
    elements: Vec<RegularOpenSet>,
    index: HashMap<RegularOpenSet, usize>,
}

/// Builds `r.o.(P)`; the poset must be separative.
pub fn ro_algebra(poset: &FinitePoset, budget: &RoBudget) -> Result<RegularOpenAlgebra, RoError> {
    if poset.len() > budget.max_conditions {
        return Err(RoError::Budget {
            what: "max_conditions",
            limit: budget.max_conditions,
            needed: poset.len().to_string(),
        });
    }
    if let Some((p, q)) = poset.separativity_counterexample() {
        return Err(RoError::NotSeparative {
            p: poset.label(p).to_string(),
            q: poset.label(q).to_string(),
        });
    }
    let n = poset.len();
    let minimal: Vec<usize> = (0..n).filter(|&p| poset.below(p).count_ones(..) == 1).collect();
    let k = minimal.len();
    if k >= usize::BITS as usize - 1 || (1usize << k) > budget.max_elements {
        return Err(RoError::Budget {
            what: "max_elements",
            limit: budget.max_elements,
            needed: format!("2^{k}"),
        });
    }
    let mut elements: Vec<RegularOpenSet> = (0..1usize << k)
        .map(|mask| {
            let mut s = FixedBitSet::with_capacity(n);
            for (b, &m) in minimal.iter().enumerate() {
                s.set(m, mask >> b & 1 == 1);
            }
            ro_closure(poset, &s)
        })
        .collect();
    elements.sort_by_cached_key(|e| (e.len(), e.conditions()));
    let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Ok(RegularOpenAlgebra {
        poset: poset.clone(),
        elements,
        index,
    })
}

impl RegularOpenAlgebra {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn elements(&self) -> &[RegularOpenSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, a: &RegularOpenSet) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn zero(&self) -> RegularOpenSet {
        RegularOpenSet(FixedBitSet::with_capacity(self.poset.len()))
    }

    pub fn one(&self) -> RegularOpenSet {
        let mut s = FixedBitSet::with_capacity(self.poset.len());
        s.insert_range(..);
        RegularOpenSet(s)
    }

    pub fn meet(&self, a: &RegularOpenSet, b: &RegularOpenSet) -> RegularOpenSet {
        let mut s = a.0.clone();
        s.intersect_with(&b.0);
        RegularOpenSet(s)
    }

    pub fn join(&self, a: &RegularOpenSet, b: &RegularOpenSet) -> RegularOpenSet {
        let mut s = a.0.clone();
        s.union_with(&b.0);
        ro_closure(&self.poset, &s)
    }

    pub fn complement(&self, a: &RegularOpenSet) -> RegularOpenSet {
        let n = self.poset.len();
        let mut s = FixedBitSet::with_capacity(n);
        for p in 0..n {
            s.set(p, self.poset.below(p).is_disjoint(&a.0));
        }
        RegularOpenSet(s)
    }

    pub fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a RegularOpenSet>) -> RegularOpenSet {
        let mut s = FixedBitSet::with_capacity(self.poset.len());
        for a in items {
            s.union_with(&a.0);
        }
        ro_closure(&self.poset, &s)
    }

    pub fn meet_all<'a>(&self, items: impl IntoIterator<Item = &'a RegularOpenSet>) -> RegularOpenSet {
        let mut acc = self.one();
        for a in items {
            acc.0.intersect_with(&a.0);
        }
        acc
    }

    pub fn leq(&self, a: &RegularOpenSet, b: &RegularOpenSet) -> bool {
        a.is_subset(b)
    }

    /// `e(p) = ro_closure({p})`.
    pub fn embed(&self, p: usize) -> RegularOpenSet {
        let mut s = FixedBitSet::with_capacity(self.poset.len());
        s.insert(p);
        ro_closure(&self.poset, &s)
    }

    /// The dense embedding, by condition label.
    pub fn dense_embedding(&self, label: &str) -> Result<RegularOpenSet, RoError> {
        let p = self
            .poset
            .index_of(label)
            .ok_or_else(|| RoError::UnknownCondition(label.to_string()))?;
        Ok(self.embed(p))
    }

    /// Validates an arbitrary condition set as an element of the algebra.
    pub fn element(&self, s: FixedBitSet) -> Result<RegularOpenSet, RoError> {
        let e = RegularOpenSet(s);
        if self.index.contains_key(&e) {
            Ok(e)
        } else {
            Err(RoError::NotRegularOpen(format!("{:?}", e.labels(&self.poset))))
        }
    }

    /// The element whose condition labels are `labels`.
    pub fn element_from_labels(&self, labels: &[&str]) -> Result<RegularOpenSet, RoError> {
        let mut s = FixedBitSet::with_capacity(self.poset.len());
        for l in labels {
            let p = self.poset.index_of(l).ok_or_else(|| RoError::UnknownCondition(l.to_string()))?;
            s.insert(p);
        }
        self.element(s)
    }

    /// The atoms: in a finite separative poset these are the closures of the
    /// single minimal conditions, i.e. the elements holding exactly one.
    pub fn atoms(&self) -> Vec<RegularOpenSet> {
        let minimal: Vec<usize> = (0..self.poset.len())
            .filter(|&p| self.poset.below(p).count_ones(..) == 1)
            .collect();
        self.elements
            .iter()
            .filter(|a| minimal.iter().filter(|&&m| a.contains(m)).count() == 1)
            .cloned()
            .collect()
    }

    pub fn to_export(&self) -> AlgebraExport {
        AlgebraExport {
            poset: self.poset.labels().to_vec(),
            elements: self.elements.iter().map(|e| e.labels(&self.poset)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("algebra serializes")
    }

    /// Hasse diagram of the algebra in DOT.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  e{i} [label=\"{{{}}}\"];", e.labels(&self.poset).join(","));
        }
        // b covers a exactly when b = a ∨ t for an atom t ≰ a.
        let atoms = self.atoms();
        for (i, a) in self.elements.iter().enumerate() {
            for t in atoms.iter().filter(|t| !t.is_subset(a)) {
                let j = self.index_of(&self.join(a, t)).expect("closed under join");
                let _ = writeln!(s, "  e{i} -> e{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraExport {
    pub poset: Vec<String>,
    /// Regular open sets as sorted condition lists.
    pub elements: Vec<Vec<String>>,
}

/// A finite set of pairwise disjoint nonzero elements joining to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<RegularOpenSet>,
}

impl Partition {
    pub fn new(alg: &RegularOpenAlgebra, mut cells: Vec<RegularOpenSet>) -> Result<Self, RoError> {
        for (i, c) in cells.iter().enumerate() {
            if alg.index_of(c).is_none() {
                return Err(RoError::InvalidPartition(format!("cell {i} is not regular open")));
            }
            if c.is_zero() {
                return Err(RoError::InvalidPartition(format!("cell {i} is zero")));
            }
        }
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                if !alg.meet(&cells[i], &cells[j]).is_zero() {
                    return Err(RoError::InvalidPartition(format!("cells {i} and {j} meet")));
                }
            }
        }
        if alg.join_all(&cells) != alg.one() {
            return Err(RoError::InvalidPartition("cells do not join to 1".into()));
        }
        cells.sort_by_cached_key(|c| c.conditions());
        Ok(Partition { cells })
    }

    pub fn cells(&self) -> &[RegularOpenSet] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Every cell of `self` lies below some cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.cells.iter().all(|c| coarser.cells.iter().any(|d| c.is_subset(d)))
    }
}

/// The partition of nonzero meets `b1 ∧ … ∧ bk` with `bi` drawn from the
/// `i`-th partition.
pub fn common_refinement(alg: &RegularOpenAlgebra, parts: &[Partition]) -> Result<Partition, RoError> {
    let mut cells = vec![alg.one()];
    for part in parts {
        let mut next: Vec<RegularOpenSet> = Vec::new();
        for c in &cells {
            for b in part.cells() {
                let m = alg.meet(c, b);
                if !m.is_zero() && !next.contains(&m) {
                    next.push(m);
                }
            }
        }
        cells = next;
    }
    Partition::new(alg, cells)
}

#[derive(Debug, Clone, Serialize)]
pub struct DistributivityReport {
    pub family_sizes: Vec<usize>,
    pub refinement: Vec<Vec<String>>,
    pub refines_every_input: bool,
}

/// Runs [`common_refinement`] and reports it. A finite algebra always has
/// one; this only exposes the refinement computation.
pub fn distributivity_report(alg: &RegularOpenAlgebra, families: &[Partition]) -> Result<DistributivityReport, RoError> {
    let refinement = common_refinement(alg, families)?;
    Ok(DistributivityReport {
        family_sizes: families.iter().map(Partition::len).collect(),
        refines_every_input: families.iter().all(|f| refinement.refines(f)),
        refinement: refinement.cells().iter().map(|c| c.labels(alg.poset())).collect(),
    })
}

/// A Boolean-algebra law that failed on specific elements (by index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

/// Checks the Boolean-algebra laws pointwise over every element triple using
/// operation tables built from [`RegularOpenAlgebra::meet`],
/// [`RegularOpenAlgebra::join`] and [`RegularOpenAlgebra::complement`].
/// Also checks closure of the three operations.
pub fn check_boolean_axioms(alg: &RegularOpenAlgebra) -> Vec<AxiomViolation> {
    let n = alg.len();
    let mut out = Vec::new();
    let idx = |e: RegularOpenSet, law: &'static str, at: Vec<usize>, out: &mut Vec<AxiomViolation>| match alg.index_of(&e) {
        Some(i) => i,
        None => {
            out.push(AxiomViolation { law, elements: at });
            usize::MAX
        }
    };
    let els = alg.elements();
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = idx(alg.meet(&els[a], &els[b]), "closure under meet", vec![a, b], &mut out);
            join[a * n + b] = idx(alg.join(&els[a], &els[b]), "closure under join", vec![a, b], &mut out);
        }
    }
    let neg: Vec<usize> = (0..n)
        .map(|a| idx(alg.complement(&els[a]), "closure under complement", vec![a], &mut out))
        .collect();
    if !out.is_empty() {
        return out;
    }
    let zero = alg.index_of(&alg.zero());
    let one = alg.index_of(&alg.one());
    let (Some(zero), Some(one)) = (zero, one) else {
        out.push(AxiomViolation {
            law: "0 and 1 are elements",
            elements: vec![],
        });
        return out;
    };
    let m = |a: usize, b: usize| meet[a * n + b];
    let j = |a: usize, b: usize| join[a * n + b];
    let mut fail = |law: &'static str, ok: bool, at: &[usize]| {
        if !ok {
            out.push(AxiomViolation { law, elements: at.to_vec() });
        }
    };
    for a in 0..n {
        fail("meet identity", m(a, one) == a, &[a]);
        fail("join identity", j(a, zero) == a, &[a]);
        fail("complement meet", m(a, neg[a]) == zero, &[a]);
        fail("complement join", j(a, neg[a]) == one, &[a]);
        fail("involution", neg[neg[a]] == a, &[a]);
        fail("meet idempotent", m(a, a) == a, &[a]);
        fail("join idempotent", j(a, a) == a, &[a]);
        for b in 0..n {
            fail("meet commutative", m(a, b) == m(b, a), &[a, b]);
            fail("join commutative", j(a, b) == j(b, a), &[a, b]);
            fail("absorption meet", m(a, j(a, b)) == a, &[a, b]);
            fail("absorption join", j(a, m(a, b)) == a, &[a, b]);
            fail("de morgan", neg[m(a, b)] == j(neg[a], neg[b]), &[a, b]);
            fail("order agrees with meet", (m(a, b) == a) == els[a].is_subset(&els[b]), &[a, b]);
            for c in 0..n {
                fail("meet associative", m(a, m(b, c)) == m(m(a, b), c), &[a, b, c]);
                fail("join associative", j(a, j(b, c)) == j(j(a, b), c), &[a, b, c]);
                fail("meet distributes", m(a, j(b, c)) == j(m(a, b), m(a, c)), &[a, b, c]);
                fail("join distributes", j(a, m(b, c)) == m(j(a, b), j(a, c)), &[a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &x in xs {
            s.insert(x);
        }
        s
    }

    fn four_atoms() -> FinitePoset {
        // top t over atoms 1..4
        let labels = ["t", "1", "2", "3", "4"].map(String::from).to_vec();
        FinitePoset::from_pairs(labels, &[(1, 0), (2, 0), (3, 0), (4, 0)]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let t = FinitePoset::top_two_atoms();
        assert_eq!(ro_closure(&t, &bits(3, &[1])).conditions(), vec![1]);
        assert_eq!(ro_closure(&t, &bits(3, &[1, 2])).conditions(), vec![0, 1, 2]);
        assert!(ro_closure(&t, &bits(3, &[])).is_zero());
    }

    #[test]
    fn algebra_sizes() {
        let b = RoBudget::default();
        let top2 = ro_algebra(&FinitePoset::top_two_atoms(), &b).unwrap();
        assert_eq!(top2.len(), 4);
        let got: Vec<Vec<usize>> = top2.elements().iter().map(|e| e.conditions()).collect();
        assert_eq!(got, vec![vec![], vec![1], vec![2], vec![0, 1, 2]]);
        assert_eq!(ro_algebra(&FinitePoset::antichain(2), &b).unwrap().len(), 4);
        assert_eq!(ro_algebra(&FinitePoset::antichain(1), &b).unwrap().len(), 2);
        assert!(matches!(
            ro_algebra(&FinitePoset::chain(2), &b),
            Err(RoError::NotSeparative { .. })
        ));
    }

    #[test]
    fn embedding_examples() {
        let alg = ro_algebra(&FinitePoset::top_two_atoms(), &RoBudget::default()).unwrap();
        assert_eq!(alg.dense_embedding("b").unwrap().conditions(), vec![1]);
        assert_eq!(alg.dense_embedding("a").unwrap(), alg.one());
        assert!(alg.dense_embedding("zz").is_err());
        let ac = ro_algebra(&FinitePoset::antichain(2), &RoBudget::default()).unwrap();
        assert!(ac.meet(&ac.embed(0), &ac.embed(1)).is_zero());
    }

    // Oracle: scan every subset with the literal definition.
    #[test]
    fn enumeration_matches_brute_force() {
        for poset in [four_atoms(), FinitePoset::top_two_atoms(), FinitePoset::antichain(3)] {
            let n = poset.len();
            let mut brute: Vec<Vec<usize>> = (0..1u32 << n)
                .map(|m| bits(n, &(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
                .filter(|s| is_regular_open(&poset, s))
                .map(|s| s.ones().collect())
                .collect();
            brute.sort_by_key(|v| (v.len(), v.clone()));
            let alg = ro_algebra(&poset, &RoBudget::default()).unwrap();
            let got: Vec<Vec<usize>> = alg.elements().iter().map(|e| e.conditions()).collect();
            assert_eq!(got, brute);
            assert!(check_boolean_axioms(&alg).is_empty());
        }
    }

    #[test]
    fn refinement_examples() {
        let ac = ro_algebra(&FinitePoset::antichain(2), &RoBudget::default()).unwrap();
        let p = Partition::new(&ac, vec![ac.embed(0), ac.embed(1)]).unwrap();
        assert_eq!(common_refinement(&ac, std::slice::from_ref(&p)).unwrap(), p);
        let unit = common_refinement(&ac, &[]).unwrap();
        assert_eq!(unit.cells(), &[ac.one()]);

        let alg = ro_algebra(&four_atoms(), &RoBudget::default()).unwrap();
        let el = |xs: &[&str]| alg.element_from_labels(xs).unwrap();
        let a = Partition::new(&alg, vec![el(&["1", "2"]), el(&["3", "4"])]).unwrap();
        let b = Partition::new(&alg, vec![el(&["1", "3"]), el(&["2", "4"])]).unwrap();
        let r = common_refinement(&alg, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.cells().to_vec(), {
            let mut atoms = alg.atoms();
            atoms.sort_by_cached_key(|c| c.conditions());
            atoms
        });
        let report = distributivity_report(&alg, &[a, b]).unwrap();
        assert!(report.refines_every_input);
        assert_eq!(report.refinement.len(), 4);
    }

    #[test]
    fn partition_validation() {
        let alg = ro_algebra(&four_atoms(), &RoBudget::default()).unwrap();
        let el = |xs: &[&str]| alg.element_from_labels(xs).unwrap();
        assert!(matches!(
            Partition::new(&alg, vec![el(&["1", "2"]), el(&["2", "3"]), el(&["4"])]),
            Err(RoError::InvalidPartition(m)) if m.contains("meet")
        ));
        assert!(matches!(
            Partition::new(&alg, vec![el(&["1", "2"])]),
            Err(RoError::InvalidPartition(m)) if m.contains("join")
        ));
        assert!(matches!(
            Partition::new(&alg, vec![alg.zero(), alg.one()]),
            Err(RoError::InvalidPartition(m)) if m.contains("zero")
        ));
        assert!(alg.element_from_labels(&["t"]).is_err());
    }

    #[test]
    fn exports() {
        let alg = ro_algebra(&FinitePoset::top_two_atoms(), &RoBudget::default()).unwrap();
        let json = alg.to_json();
        assert!(json.contains("\"elements\""));
        let dot = alg.to_dot("top2");
        assert_eq!(dot.matches("->").count(), 4);
    }
}

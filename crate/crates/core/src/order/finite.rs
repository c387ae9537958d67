use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::OrderError;
use crate::hf::HFSet;

/// A finite partial order on opaque labels, with the order materialized in
/// both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    codes: Vec<HFSet>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    /// Pairs `[p, q]` meaning `p ≤ q`.
    pub leq: Vec<[String; 2]>,
}

/// Outcome of a splitting check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting<C> {
    /// Every checked condition has two incompatible extensions.
    Holds,
    /// This condition has no two incompatible extensions.
    Fails(C),
    /// The search space ran out before deciding this condition.
    Undecided(C),
}

impl<C> Splitting<C> {
    pub fn holds(&self) -> bool {
        matches!(self, Splitting::Holds)
    }
}

impl FinitePoset {
    /// Builds a poset from `pairs` (`(p, q)` meaning `p ≤ q`), adding the
    /// reflexive closure and rejecting anything that is not a partial order.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in above.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(p, q) in pairs {
            if p >= n || q >= n {
                return Err(OrderError::InvalidParams(format!("pair ({p}, {q}) out of range")));
            }
            above[p].insert(q);
        }
        for p in 0..n {
            for q in above[p].ones() {
                if q != p && above[q].contains(p) {
                    return Err(OrderError::Antisymmetry {
                        p: labels[p].clone(),
                        q: labels[q].clone(),
                    });
                }
                for r in above[q].ones() {
                    if !above[p].contains(r) {
                        return Err(OrderError::Transitivity {
                            p: labels[p].clone(),
                            q: labels[q].clone(),
                            r: labels[r].clone(),
                        });
                    }
                }
            }
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for p in 0..n {
            for q in above[p].ones() {
                below[q].insert(p);
            }
        }
        let codes = (0..n as u64).map(HFSet::from_code).collect();
        Ok(FinitePoset {
            labels,
            index,
            below,
            above,
            codes,
        })
    }

    /// Builds a poset from a decidable order on `0..labels.len()`.
    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let n = labels.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| leq(p, q))
            .collect();
        Self::from_pairs(labels, &pairs)
    }

    /// Replaces the hereditarily finite codes of the conditions (by default the
    /// condition with index `i` has Ackermann code `i`).
    pub fn with_codes(mut self, codes: Vec<HFSet>) -> Result<Self, OrderError> {
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        if codes.len() != self.len() || sorted.len() != codes.len() {
            return Err(OrderError::InvalidParams("condition codes must be distinct, one per condition".into()));
        }
        self.codes = codes;
        Ok(self)
    }

    /// `n` pairwise incomparable conditions `a0 .. a(n-1)`.
    pub fn antichain(n: usize) -> Self {
        Self::from_pairs((0..n).map(|i| format!("a{i}")).collect(), &[]).expect("antichain is a poset")
    }

    /// `c0 > c1 > ... > c(n-1)`, so `c0` is the top.
    pub fn chain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| format!("c{i}")).collect(), |p, q| p >= q).expect("chain is a poset")
    }

    /// A top `a` above two incomparable atoms `b` and `c`.
    pub fn top_two_atoms() -> Self {
        Self::from_pairs(vec!["a".into(), "b".into(), "c".into()], &[(1, 0), (2, 0)]).expect("valid poset")
    }

    pub fn from_json(text: &str) -> Result<Self, OrderError> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| OrderError::Json(e.to_string()))?;
        let index: HashMap<&str, usize> = file.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &String| index.get(l.as_str()).copied().ok_or_else(|| OrderError::UnknownLabel(l.clone()));
        let mut pairs = Vec::with_capacity(file.leq.len());
        for [p, q] in &file.leq {
            pairs.push((look(p)?, look(q)?));
        }
        Self::from_pairs(file.elements, &pairs)
    }

    pub fn to_file(&self) -> PosetFile {
        let mut leq = Vec::new();
        for p in 0..self.len() {
            for q in self.above[p].ones() {
                if p != q {
                    leq.push([self.labels[p].clone(), self.labels[q].clone()]);
                }
            }
        }
        PosetFile {
            elements: self.labels.clone(),
            leq,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("poset serializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<usize, OrderError> {
        self.index_of(label).ok_or_else(|| OrderError::UnknownLabel(label.to_string()))
    }

    pub fn code(&self, p: usize) -> &HFSet {
        &self.codes[p]
    }

    pub fn codes(&self) -> &[HFSet] {
        &self.codes
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.above[p].contains(q)
    }

    /// `{r : r ≤ p}`.
    pub fn below(&self, p: usize) -> &FixedBitSet {
        &self.below[p]
    }

    /// `{q : p ≤ q}`.
    pub fn above(&self, p: usize) -> &FixedBitSet {
        &self.above[p]
    }

    pub fn compatible(&self, p: usize, q: usize) -> bool {
        !self.below[p].is_disjoint(&self.below[q])
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.below[p].count_ones(..) == self.len())
    }

    /// Every condition has an extension in `d`.
    pub fn is_dense(&self, d: &FixedBitSet) -> bool {
        (0..self.len()).all(|p| !self.below[p].is_disjoint(d))
    }

    /// The first pair `(p, q)` with `p ≰ q` such that every extension of `p`
    /// is compatible with `q`.
    pub fn separativity_counterexample(&self) -> Option<(usize, usize)> {
        for p in 0..self.len() {
            for q in 0..self.len() {
                if self.leq(p, q) {
                    continue;
                }
                if self.below[p].ones().all(|r| self.compatible(r, q)) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_separative(&self) -> bool {
        self.separativity_counterexample().is_none()
    }

    /// Every condition has two incompatible extensions.
    pub fn splitting(&self) -> Splitting<usize> {
        for p in 0..self.len() {
            let ext: Vec<usize> = self.below[p].ones().collect();
            let split = ext
                .iter()
                .any(|&r| ext.iter().any(|&q| !self.compatible(r, q)));
            if !split {
                return Splitting::Fails(p);
            }
        }
        Splitting::Holds
    }

    pub fn has_splitting(&self) -> bool {
        self.splitting().holds()
    }

    /// The separative quotient and the projection onto it.
    ///
    /// `p ~ q` iff `p` and `q` are compatible with the same conditions, and
    /// `[p] ≤ [q]` iff every extension of `p` is compatible with `q`.
    pub fn separative_quotient(&self) -> (FinitePoset, Vec<usize>) {
        let n = self.len();
        let compat: Vec<FixedBitSet> = (0..n)
            .map(|p| {
                let mut s = FixedBitSet::with_capacity(n);
                for r in 0..n {
                    s.set(r, self.compatible(p, r));
                }
                s
            })
            .collect();
        let mut reps: Vec<usize> = Vec::new();
        let mut projection = vec![0usize; n];
        for p in 0..n {
            match reps.iter().position(|&r| compat[r] == compat[p]) {
                Some(c) => projection[p] = c,
                None => {
                    projection[p] = reps.len();
                    reps.push(p);
                }
            }
        }
        let labels: Vec<String> = (0..reps.len())
            .map(|c| {
                let members: Vec<&str> = (0..n).filter(|&p| projection[p] == c).map(|p| self.label(p)).collect();
                members.join("~")
            })
            .collect();
        let quotient = Self::from_fn(labels, |a, b| {
            let (p, q) = (reps[a], reps[b]);
            self.below[p].ones().all(|r| self.compatible(r, q))
        })
        .expect("separative quotient order is a partial order");
        (quotient, projection)
    }

    /// Whether `perm` is an order automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for &x in perm {
            if x >= n || seen.put(x) {
                return false;
            }
        }
        (0..n).all(|p| (0..n).all(|q| self.leq(p, q) == self.leq(perm[p], perm[q])))
    }

    /// Covering pairs `(p, q)`: `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.above[p].ones() {
                if q == p {
                    continue;
                }
                let between = self.above[p]
                    .ones()
                    .any(|r| r != p && r != q && self.leq(r, q));
                if !between {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Hasse diagram in DOT, larger conditions drawn on top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (p, q) in self.covers() {
            let _ = writeln!(s, "  n{p} -> n{q};");
        }
        s.push_str("}\n");
        s
    }
}

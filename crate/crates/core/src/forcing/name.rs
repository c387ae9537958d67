//! P-names over a finite poset.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use super::ForcingError;
use crate::hf::{hf_parse, HFSet};
use crate::order::FinitePoset;

/// The condition attached to a member of a name: a condition of the poset
/// or the formal unit adjoined for posets without a maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NameCond {
    One,
    At(usize),
}

/// A name: a finite set of `(name, condition)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PName(Arc<BTreeSet<(PName, NameCond)>>);

impl PName {
    pub fn empty() -> Self {
        PName(Arc::new(BTreeSet::new()))
    }

    pub fn from_pairs<I: IntoIterator<Item = (PName, NameCond)>>(pairs: I) -> Self {
        PName(Arc::new(pairs.into_iter().collect()))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(PName, NameCond)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `rank(∅) = 0`, otherwise one more than the largest member rank.
    pub fn rank(&self) -> usize {
        self.0.iter().map(|(n, _)| n.rank() + 1).max().unwrap_or(0)
    }

    /// The check name `x̌ = {(y̌, unit) : y ∈ x}`.
    pub fn check(x: &HFSet, unit: NameCond) -> Self {
        PName::from_pairs(x.elements().iter().map(|y| (PName::check(y, unit), unit)))
    }

    /// The set this name checks, if it is a check name for `unit`.
    pub fn as_check(&self, unit: NameCond) -> Option<HFSet> {
        let mut members = Vec::with_capacity(self.len());
        for (n, c) in self.pairs() {
            if *c != unit {
                return None;
            }
            members.push(n.as_check(unit)?);
        }
        let x = HFSet::from_elements(members);
        (x.len() == self.len()).then_some(x)
    }

    pub fn conditions(&self) -> impl Iterator<Item = NameCond> + '_ {
        self.0.iter().map(|(_, c)| *c)
    }

    /// Maps every condition through `f`, recursively.
    pub fn map_conditions(&self, f: &impl Fn(NameCond) -> NameCond) -> PName {
        PName::from_pairs(self.pairs().map(|(n, c)| (n.map_conditions(f), f(*c))))
    }

    /// The name itself and all names reachable through members.
    pub fn hereditary_subnames(&self, out: &mut BTreeSet<PName>) {
        if out.insert(self.clone()) {
            for (n, _) in self.pairs() {
                n.hereditary_subnames(out);
            }
        }
    }

    /// Human-readable form using poset labels; the formal unit prints as `1`.
    pub fn render(&self, poset: &FinitePoset) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(n, c)| format!("({}, {})", n.render(poset), cond_label(poset, *c)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn cond_label(poset: &FinitePoset, c: NameCond) -> String {
    match c {
        NameCond::One => "1".to_string(),
        NameCond::At(i) => poset.label(i).to_string(),
    }
}

/// Value of a name under a filter: `i_G(ẋ) = {i_G(ẏ) : (ẏ, q) ∈ ẋ, q ∈ G}`.
/// The formal unit belongs to every filter.
pub fn eval_name(name: &PName, filter: &FixedBitSet) -> HFSet {
    HFSet::from_elements(
        name.pairs()
            .filter(|(_, c)| match c {
                NameCond::One => true,
                NameCond::At(i) => filter.contains(*i),
            })
            .map(|(n, _)| eval_name(n, filter)),
    )
}

fn label_to_cond(poset: &FinitePoset, label: &str) -> Result<NameCond, ForcingError> {
    match poset.index_of(label) {
        Some(i) => Ok(NameCond::At(i)),
        None if label == "1" => Ok(NameCond::One),
        None => Err(ForcingError::UnknownCondition(label.to_string())),
    }
}

/// Reads a name from `check:<hf-literal>` or a JSON tree
/// `{"pairs": [[<name>, "<label>"], ...]}` whose inner names may themselves
/// be `"check:..."` strings. Label `1` is the formal unit unless the poset
/// has a condition of that name.
pub fn parse_name(text: &str, poset: &FinitePoset, unit: NameCond) -> Result<PName, ForcingError> {
    let text = text.trim();
    if let Some(lit) = text.strip_prefix("check:") {
        return Ok(PName::check(&hf_parse(lit)?, unit));
    }
    let value: Value = serde_json::from_str(text).map_err(|e| ForcingError::BadName(e.to_string()))?;
    name_from_json(&value, poset, unit)
}

pub fn name_from_json(value: &Value, poset: &FinitePoset, unit: NameCond) -> Result<PName, ForcingError> {
    if let Some(s) = value.as_str() {
        return parse_name(s, poset, unit);
    }
    let pairs = value
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| ForcingError::BadName("expected {\"pairs\": [...]}".into()))?;
    let mut out = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let (Some(n), Some(c)) = (pair.get(0), pair.get(1).and_then(Value::as_str)) else {
            return Err(ForcingError::BadName(format!("bad pair {pair}")));
        };
        out.push((name_from_json(n, poset, unit)?, label_to_cond(poset, c)?));
    }
    Ok(PName::from_pairs(out))
}

/// JSON tree of a name; check subnames are abbreviated as `"check:..."`.
pub fn name_to_json(name: &PName, poset: &FinitePoset, unit: NameCond) -> Value {
    if let Some(x) = name.as_check(unit) {
        return Value::String(format!("check:{x}"));
    }
    let pairs: Vec<Value> = name
        .pairs()
        .map(|(n, c)| json!([name_to_json(n, poset, unit), cond_label(poset, *c)]))
        .collect();
    json!({ "pairs": pairs })
}

//! Finite ∈-structures and Tarski satisfaction.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::formula::{Formula, Var};
use super::LogicError;
use crate::hf::{v_level, HFSet, HfBudget};

/// A binary relation on `0..size`, read as membership: `holds(i, j)` means
/// "element i is a member of element j".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Relation {
            size,
            rows: vec![FixedBitSet::with_capacity(size); size],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Self {
        let mut r = Self::empty(size);
        for (i, j) in pairs {
            r.rows[i].insert(j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }
}

/// A finite domain of hereditarily finite sets with the membership relation
/// among them. The relation is always recomputed from the sets themselves.
#[derive(Debug, Clone)]
pub struct FiniteStructure {
    domain: Vec<HFSet>,
    index: HashMap<HFSet, usize>,
    rel: Relation,
}

impl FiniteStructure {
    /// Builds the structure `(domain, ∈)`. The domain is stored in code order.
    pub fn new(mut domain: Vec<HFSet>) -> Result<Self, LogicError> {
        domain.sort();
        if let Some(w) = domain.windows(2).find(|w| w[0] == w[1]) {
            return Err(LogicError::DuplicateMember(w[0].clone()));
        }
        let index: HashMap<HFSet, usize> =
            domain.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut rel = Relation::empty(domain.len());
        for (j, y) in domain.iter().enumerate() {
            for z in y.elements() {
                if let Some(&i) = index.get(z) {
                    rel.rows[i].insert(j);
                }
            }
        }
        Ok(FiniteStructure { domain, index, rel })
    }

    /// `(x, ∈)` where the domain is the members of `x`.
    pub fn of_set(x: &HFSet) -> Self {
        Self::new(x.elements().to_vec()).expect("members of a set are distinct")
    }

    /// `(V_n, ∈)`.
    pub fn v_level(n: usize, budget: &HfBudget) -> Result<Self, LogicError> {
        Self::new(v_level(n, budget)?)
    }

    pub fn domain(&self) -> &[HFSet] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn index_of(&self, x: &HFSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// The domain members selected by `subset` (a bitset over domain indices).
    pub fn members(&self, subset: &FixedBitSet) -> Vec<HFSet> {
        subset.ones().map(|i| self.domain[i].clone()).collect()
    }

    /// A subset of the domain reified as a set.
    pub fn reify(&self, subset: &FixedBitSet) -> HFSet {
        HFSet::from_elements(self.members(subset))
    }

    pub fn from_json(text: &str) -> Result<Self, LogicError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| LogicError::Json(e.to_string()))?;
        Self::new(file.domain)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StructureFile {
            domain: self.domain.clone(),
        })
        .expect("structure serializes")
    }
}

/// On-disk form of a structure. Only the domain is read; membership is
/// recomputed.
#[derive(Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub domain: Vec<HFSet>,
}

/// Assignment of free variables to domain indices, innermost binding last.
pub type Env = Vec<(Var, usize)>;

/// Evaluates `phi` over an abstract relation.
pub fn eval(rel: &Relation, phi: &Formula, env: &mut Env) -> Result<bool, LogicError> {
    fn lookup(env: &Env, v: &Var) -> Result<usize, LogicError> {
        env.iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, i)| *i)
            .ok_or_else(|| LogicError::Unassigned(v.clone()))
    }
    Ok(match phi {
        Formula::Eq(a, b) => lookup(env, a)? == lookup(env, b)?,
        Formula::In(a, b) => rel.holds(lookup(env, a)?, lookup(env, b)?),
        Formula::Not(f) => !eval(rel, f, env)?,
        Formula::And(a, b) => eval(rel, a, env)? && eval(rel, b, env)?,
        Formula::Or(a, b) => eval(rel, a, env)? || eval(rel, b, env)?,
        Formula::Imp(a, b) => !eval(rel, a, env)? || eval(rel, b, env)?,
        Formula::Iff(a, b) => eval(rel, a, env)? == eval(rel, b, env)?,
        Formula::Exists(v, f) => {
            let mut found = false;
            for i in 0..rel.size() {
                env.push((v.clone(), i));
                let r = eval(rel, f, env);
                env.pop();
                if r? {
                    found = true;
                    break;
                }
            }
            found
        }
        Formula::Forall(v, f) => {
            let mut all = true;
            for i in 0..rel.size() {
                env.push((v.clone(), i));
                let r = eval(rel, f, env);
                env.pop();
                if !r? {
                    all = false;
                    break;
                }
            }
            all
        }
    })
}

/// `M ⊨ φ[a]`. Every free variable of `phi` must be assigned a domain member.
pub fn satisfies(
    m: &FiniteStructure,
    phi: &Formula,
    assignment: &BTreeMap<Var, HFSet>,
) -> Result<bool, LogicError> {
    let mut env = Env::new();
    for v in phi.free_vars() {
        let x = assignment
            .get(&v)
            .ok_or_else(|| LogicError::Unassigned(v.clone()))?;
        let i = m
            .index_of(x)
            .ok_or_else(|| LogicError::NotInDomain(x.clone()))?;
        env.push((v, i));
    }
    eval(m.relation(), phi, &mut env)
}

/// The subset of `0..size` defined by a formula with exactly one free variable.
pub fn defined_indices(rel: &Relation, phi: &Formula) -> Result<FixedBitSet, LogicError> {
    let free = phi.free_vars();
    if free.len() != 1 {
        return Err(LogicError::FreeVarCount {
            expected: 1,
            found: free.len(),
        });
    }
    let v = free.into_iter().next().expect("one free variable");
    let mut out = FixedBitSet::with_capacity(rel.size());
    let mut env = Env::new();
    for i in 0..rel.size() {
        env.push((v.clone(), i));
        let holds = eval(rel, phi, &mut env)?;
        env.pop();
        out.set(i, holds);
    }
    Ok(out)
}

/// `{y ∈ domain : M ⊨ φ(y)}`.
pub fn defined_set(m: &FiniteStructure, phi: &Formula) -> Result<Vec<HFSet>, LogicError> {
    Ok(m.members(&defined_indices(m.relation(), phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::hf_parse;
    use crate::logic::formula::parse_formula;

    fn s(t: &str) -> HFSet {
        hf_parse(t).unwrap()
    }

    fn at(x: &str) -> BTreeMap<Var, HFSet> {
        BTreeMap::from([("x".to_string(), s(x))])
    }

    #[test]
    fn satisfaction_examples() {
        let b = HfBudget::default();
        let v2 = FiniteStructure::v_level(2, &b).unwrap();
        let v3 = FiniteStructure::v_level(3, &b).unwrap();
        let empty = parse_formula("(all y (not (in y x)))").unwrap();
        assert!(satisfies(&v2, &empty, &at("{}")).unwrap());
        assert!(!satisfies(&v2, &empty, &at("{{}}")).unwrap());
        let nonempty = parse_formula("(ex y (in y x))").unwrap();
        assert!(satisfies(&v3, &nonempty, &at("{{{}}}")).unwrap());
    }

    #[test]
    fn unassigned_and_foreign_values_are_errors() {
        let v2 = FiniteStructure::v_level(2, &HfBudget::default()).unwrap();
        let phi = parse_formula("(in x z)").unwrap();
        assert_eq!(
            satisfies(&v2, &phi, &at("{}")),
            Err(LogicError::Unassigned("z".into()))
        );
        let psi = parse_formula("(= x x)").unwrap();
        assert!(matches!(
            satisfies(&v2, &psi, &at("{{{}}}")),
            Err(LogicError::NotInDomain(_))
        ));
    }

    #[test]
    fn defined_set_examples() {
        let b = HfBudget::default();
        let v2 = FiniteStructure::v_level(2, &b).unwrap();
        let v3 = FiniteStructure::v_level(3, &b).unwrap();
        let empty = parse_formula("(all y (not (in y x)))").unwrap();
        assert_eq!(defined_set(&v2, &empty).unwrap(), vec![s("{}")]);
        let all = parse_formula("(= x x)").unwrap();
        assert_eq!(defined_set(&v2, &all).unwrap(), v2.domain().to_vec());
        let nonempty = parse_formula("(ex y (in y x))").unwrap();
        let got = defined_set(&v3, &nonempty).unwrap();
        assert_eq!(got, vec![s("{{}}"), s("{{{}}}"), s("{{},{{}}}")]);
        let two = parse_formula("(in x y)").unwrap();
        assert_eq!(
            defined_set(&v3, &two),
            Err(LogicError::FreeVarCount { expected: 1, found: 2 })
        );
    }

    #[test]
    fn relation_matches_membership() {
        let v4 = FiniteStructure::v_level(4, &HfBudget::default()).unwrap();
        for (i, x) in v4.domain().iter().enumerate() {
            for (j, y) in v4.domain().iter().enumerate() {
                assert_eq!(v4.relation().holds(i, j), y.contains(x));
            }
        }
    }

    #[test]
    fn json_recomputes_membership() {
        let m = FiniteStructure::from_json(r#"{"domain": ["{{}}", "{}"], "relation": [[1, 0]]}"#)
            .unwrap();
        assert_eq!(m.domain(), &[s("{}"), s("{{}}")]);
        assert!(m.relation().holds(0, 1));
        assert!(!m.relation().holds(1, 0));
        assert!(matches!(
            FiniteStructure::from_json(r#"{"domain": ["{}", "{ }"]}"#),
            Err(LogicError::DuplicateMember(_))
        ));
        let back = FiniteStructure::from_json(&m.to_json()).unwrap();
        assert_eq!(back.domain(), m.domain());
    }
}

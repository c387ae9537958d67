//! Hereditarily finite sets.
//!
//! An [`HFSet`] is stored in canonical form: its elements are sorted by
//! Ackermann code with duplicates removed, so structural equality is
//! extensional equality. The Ackermann code itself is
//! `code(x) = sum over y in x of 2^code(y)`, which is a bijection between
//! hereditarily finite sets and the naturals.
//!
//! Codes grow as towers of two, so the canonical order is decided
//! structurally (compare the largest elements first) and the numeric code is
//! only cached while it fits in a machine word.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by hereditarily-finite-set operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("Ackermann code needs more than {budget_bits} bits")]
    CodeOverflow { budget_bits: u64 },
    #[error("level V_{level} has more than {max_size} members (budget max_level_size = {max_size})")]
    LevelBudget { level: usize, max_size: usize },
}

/// Size limits for the operations whose output grows as a tower of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HfBudget {
    /// Largest `|V_n|` that [`v_level`] will materialize.
    pub max_level_size: usize,
    /// Largest bit length of a code returned by [`HFSet::ackermann_code`].
    pub max_code_bits: u64,
}

impl Default for HfBudget {
    fn default() -> Self {
        HfBudget {
            max_level_size: 1 << 16,
            max_code_bits: 1 << 20,
        }
    }
}

/// A hereditarily finite set in canonical form.
///
/// Cloning is cheap (reference counted). Values are immutable and `Send + Sync`.
#[derive(Clone)]
pub struct HFSet(Arc<Node>);

struct Node {
    elems: Box<[HFSet]>,
    small: Option<u64>,
    rank: u32,
    digest: u64,
}

impl HFSet {
    /// The empty set.
    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// Builds a set from arbitrary elements, sorting and removing duplicates.
    pub fn from_elements<I: IntoIterator<Item = HFSet>>(elems: I) -> Self {
        let mut v: Vec<HFSet> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        Self::from_sorted(v)
    }

    // Caller guarantees `elems` is strictly increasing.
    fn from_sorted(elems: Vec<HFSet>) -> Self {
        let rank = elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0);
        let mut small = Some(0u64);
        let mut h = DefaultHasher::new();
        elems.len().hash(&mut h);
        for e in &elems {
            small = match (small, e.0.small) {
                (Some(acc), Some(c)) if c < 64 => Some(acc | (1u64 << c)),
                _ => None,
            };
            e.0.digest.hash(&mut h);
        }
        HFSet(Arc::new(Node {
            elems: elems.into_boxed_slice(),
            small,
            rank,
            digest: h.finish(),
        }))
    }

    pub fn singleton(x: HFSet) -> Self {
        Self::from_sorted(vec![x])
    }

    /// The unordered pair `{a, b}`.
    pub fn pair(a: HFSet, b: HFSet) -> Self {
        Self::from_elements([a, b])
    }

    /// The Kuratowski ordered pair `{{a}, {a, b}}`.
    pub fn kpair(a: HFSet, b: HFSet) -> Self {
        Self::pair(Self::singleton(a.clone()), Self::pair(a, b))
    }

    /// Splits a Kuratowski pair back into its components.
    pub fn as_kpair(&self) -> Option<(HFSet, HFSet)> {
        match self.elements() {
            [only] => match only.elements() {
                [a] => Some((a.clone(), a.clone())),
                _ => None,
            },
            [x, y] => {
                let (single, double) = if x.len() == 1 { (x, y) } else { (y, x) };
                if single.len() != 1 || double.len() != 2 {
                    return None;
                }
                let a = &single.elements()[0];
                if !double.contains(a) {
                    return None;
                }
                let b = double.elements().iter().find(|e| *e != a)?;
                Some((a.clone(), b.clone()))
            }
            _ => None,
        }
    }

    /// The von Neumann natural `n = {0, ..., n-1}`.
    pub fn nat(n: usize) -> Self {
        let mut acc: Vec<HFSet> = Vec::with_capacity(n);
        for _ in 0..n {
            let next = Self::from_sorted(acc.clone());
            acc.push(next);
        }
        Self::from_sorted(acc)
    }

    /// The set whose Ackermann code is `code`.
    pub fn from_code(code: u64) -> Self {
        let elems = (0..64u64)
            .filter(|i| code >> i & 1 == 1)
            .map(Self::from_code)
            .collect();
        Self::from_sorted(elems)
    }

    /// Inverse of [`HFSet::ackermann_code`] for arbitrary-size codes.
    pub fn from_big_code(code: &BigUint) -> Self {
        let elems = (0..code.bits())
            .filter(|&i| code.bit(i))
            .map(Self::from_code)
            .collect();
        Self::from_sorted(elems)
    }

    pub fn elements(&self) -> &[HFSet] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.0.elems.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HFSet) -> bool {
        self.elements().iter().all(|e| other.contains(e))
    }

    pub fn union(&self, other: &HFSet) -> HFSet {
        Self::from_elements(self.elements().iter().chain(other.elements()).cloned())
    }

    pub fn insert(&self, x: HFSet) -> HFSet {
        Self::from_elements(self.elements().iter().cloned().chain(std::iter::once(x)))
    }

    /// `rank(∅) = 0`, `rank(x) = 1 + max rank of members`.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// The Ackermann code when it fits in 64 bits.
    pub fn small_code(&self) -> Option<u64> {
        self.0.small
    }

    /// The Ackermann code, bounded by `budget.max_code_bits`.
    pub fn ackermann_code(&self, budget: &HfBudget) -> Result<BigUint, HfError> {
        if let Some(c) = self.0.small {
            return Ok(BigUint::from(c));
        }
        let overflow = HfError::CodeOverflow {
            budget_bits: budget.max_code_bits,
        };
        let mut code = BigUint::zero();
        for e in self.elements() {
            let bit = e.ackermann_code(budget)?;
            let bit = bit.to_u64().ok_or(overflow.clone())?;
            if bit >= budget.max_code_bits {
                return Err(overflow);
            }
            code.set_bit(bit, true);
        }
        Ok(code)
    }

    pub fn is_transitive(&self) -> bool {
        self.elements()
            .iter()
            .all(|y| y.elements().iter().all(|z| self.contains(z)))
    }

    /// Smallest transitive set containing every element of `self`.
    pub fn transitive_closure(&self) -> HFSet {
        let mut seen: BTreeSet<HFSet> = BTreeSet::new();
        let mut stack: Vec<HFSet> = self.elements().to_vec();
        while let Some(y) = stack.pop() {
            if seen.insert(y.clone()) {
                stack.extend(y.elements().iter().cloned());
            }
        }
        Self::from_sorted(seen.into_iter().collect())
    }

    /// Canonical rendering: no whitespace, members in code order.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn cmp_ack(a: &HFSet, b: &HFSet) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    match (a.0.small, b.0.small) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => {
            // the most significant bit is the largest member
            let mut xs = a.elements().iter().rev();
            let mut ys = b.elements().iter().rev();
            loop {
                match (xs.next(), ys.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(x), Some(y)) => match cmp_ack(x, y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                }
            }
        }
    }
}

impl Ord for HFSet {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_ack(self, other)
    }
}

impl PartialOrd for HFSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for HFSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.digest == other.0.digest && cmp_ack(self, other) == Ordering::Equal)
    }
}

impl Eq for HFSet {}

impl Hash for HFSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.digest.hash(state);
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for HFSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> serde::Deserialize<'de> for HFSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        hf_parse(&text).map_err(serde::de::Error::custom)
    }
}

impl FromStr for HFSet {
    type Err = HfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        hf_parse(s)
    }
}

/// Parses brace notation: `set ::= "{" [set ("," set)*] "}"`, whitespace allowed anywhere.
pub fn hf_parse(text: &str) -> Result<HFSet, HfError> {
    let mut p = BraceParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let set = p.set()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("trailing input after set"));
    }
    Ok(set)
}

struct BraceParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BraceParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> HfError {
        HfError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn set(&mut self) -> Result<HFSet, HfError> {
        if self.peek() != Some(b'{') {
            return Err(self.error("expected '{'"));
        }
        self.pos += 1;
        let mut elems = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(HFSet::empty());
        }
        loop {
            elems.push(self.set()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(HFSet::from_elements(elems));
                }
                Some(_) => return Err(self.error("expected ',' or '}'")),
                None => return Err(self.error("unexpected end of input")),
            }
        }
    }
}

/// Powerset of a finite collection, as sets.
pub fn powerset(members: &[HFSet]) -> Vec<HFSet> {
    assert!(members.len() < usize::BITS as usize, "powerset too large");
    let mut sorted = members.to_vec();
    sorted.sort();
    sorted.dedup();
    (0..1usize << sorted.len())
        .map(|mask| {
            let elems = sorted
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            HFSet::from_sorted(elems)
        })
        .collect()
}

/// Members of the cumulative-hierarchy stage `V_n`, in code order.
///
/// `V_0` is empty and `V_{n+1} = V_n ∪ P(V_n)`.
pub fn v_level(n: usize, budget: &HfBudget) -> Result<Vec<HFSet>, HfError> {
    let mut level: Vec<HFSet> = Vec::new();
    for k in 0..n {
        let too_big = level.len() >= usize::BITS as usize - 1
            || (1usize << level.len()) > budget.max_level_size;
        if too_big {
            return Err(HfError::LevelBudget {
                level: k + 1,
                max_size: budget.max_level_size,
            });
        }
        let mut next = powerset(&level);
        next.extend(level.iter().cloned());
        next.sort();
        next.dedup();
        level = next;
    }
    Ok(level)
}

/// `2^e` as a big integer, for callers reasoning about code sizes.
pub fn pow2(e: u64) -> BigUint {
    let mut x = BigUint::one();
    x <<= e;
    x
}

//! Parsing of the textual specifications accepted on the command line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};

use crate::forcing::{parse_name, range_automorphisms, Automorphism, NameCond, PName};
use crate::hf::{hf_parse, HFSet, HfBudget};
use crate::logic::{parse_formula, relation_automorphisms, FiniteStructure, Formula, LogicBudget, Relation};
use crate::order::{Bound, FinitePoset, PartialFn, PartialFnPoset};

/// A malformed argument; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub fn formula_arg(text: &str) -> Result<Formula> {
    match parse_formula(text) {
        Ok(f) => Ok(f),
        Err(e) => usage(format!("bad formula: {e}")),
    }
}

pub fn hf_arg(text: &str) -> Result<HFSet> {
    match hf_parse(text) {
        Ok(x) => Ok(x),
        Err(e) => usage(format!("bad set literal `{text}`: {e}")),
    }
}

fn bound(text: &str) -> Result<Bound> {
    match text {
        "w" | "omega" => Ok(Bound::Omega),
        n => match n.parse() {
            Ok(n) => Ok(Bound::Finite(n)),
            Err(_) => usage(format!("bad bound `{n}` (a number or `w`)")),
        },
    }
}

/// A poset given on the command line.
#[derive(Debug, Clone)]
pub enum PosetArg {
    PartialFns(PartialFnPoset),
    Finite(FinitePoset),
}

/// A finite poset together with its partial functions when it came from one
/// of the partial-function families.
pub struct Materialized {
    pub poset: FinitePoset,
    pub conds: Option<Vec<PartialFn>>,
    pub range: Option<u64>,
}

impl PosetArg {
    /// `cohen:K[:N]`, `fin_partial:D:R`, `fin_inj:D:R`, `witness:<set>`,
    /// `antichain:N`, `chain:N`, `top2atoms`, or a JSON poset file.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let parts: Vec<&str> = if rest.is_empty() { vec![] } else { rest.split(':').collect() };
        let num = |s: &str| -> Result<u64> {
            match s.parse() {
                Ok(n) => Ok(n),
                Err(_) => usage(format!("bad number `{s}` in poset spec `{spec}`")),
            }
        };
        Ok(match (kind, parts.as_slice()) {
            ("cohen", [k]) => PosetArg::PartialFns(PartialFnPoset::cohen(None, num(k)?)?),
            ("cohen", [k, n]) => PosetArg::PartialFns(PartialFnPoset::cohen(Some(num(n)?), num(k)?)?),
            ("fin_partial", [d, r]) => PosetArg::PartialFns(PartialFnPoset::fin_partial(bound(d)?, bound(r)?)),
            ("fin_inj", [d, r]) => PosetArg::PartialFns(PartialFnPoset::fin_inj(bound(d)?, bound(r)?)),
            ("witness", _) => PosetArg::PartialFns(PartialFnPoset::countability_witness(&hf_arg(rest)?)),
            ("antichain", [n]) => PosetArg::Finite(FinitePoset::antichain(num(n)? as usize)),
            ("chain", [n]) => PosetArg::Finite(FinitePoset::chain(num(n)? as usize)),
            ("top2atoms", []) => PosetArg::Finite(FinitePoset::top_two_atoms()),
            _ if Path::new(spec).is_file() => {
                let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
                PosetArg::Finite(FinitePoset::from_json(&text)?)
            }
            _ => return usage(format!("unknown poset `{spec}`")),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            PosetArg::PartialFns(p) => p.name(),
            PosetArg::Finite(p) => format!("finite poset with {} conditions", p.len()),
        }
    }

    pub fn materialize(&self) -> Result<Materialized> {
        Ok(match self {
            PosetArg::PartialFns(p) => {
                let (poset, conds) = p.materialize()?;
                Materialized {
                    poset,
                    conds: Some(conds),
                    range: p.range.finite(),
                }
            }
            PosetArg::Finite(p) => Materialized {
                poset: p.clone(),
                conds: None,
                range: None,
            },
        })
    }
}

impl Materialized {
    /// Range permutations for partial-function posets, otherwise the full
    /// automorphism group of the order.
    pub fn group(&self, budget: &LogicBudget) -> Result<Vec<Automorphism>> {
        if let (Some(conds), Some(range)) = (&self.conds, self.range) {
            return Ok(range_automorphisms(&self.poset, conds, range)?);
        }
        let n = self.poset.len();
        let rel = Relation::from_pairs(n, (0..n).flat_map(|p| self.poset.above(p).ones().map(move |q| (p, q))));
        relation_automorphisms(&rel, budget)?
            .into_iter()
            .map(|perm| Ok(Automorphism::new(&self.poset, perm)?))
            .collect()
    }

    pub fn unit(&self) -> NameCond {
        self.poset.maximum().map_or(NameCond::One, NameCond::At)
    }

    pub fn condition(&self, label: &str) -> Result<usize> {
        match self.poset.index_of(label) {
            Some(i) => Ok(i),
            None => usage(format!("unknown condition `{label}`")),
        }
    }
}

/// `vlevel:N`, `set:<literal>` or a JSON structure file.
pub fn structure_arg(spec: &str, hf: &HfBudget) -> Result<FiniteStructure> {
    if let Some(n) = spec.strip_prefix("vlevel:") {
        let n = match n.parse() {
            Ok(n) => n,
            Err(_) => return usage(format!("bad level `{n}`")),
        };
        return Ok(FiniteStructure::v_level(n, hf)?);
    }
    if let Some(lit) = spec.strip_prefix("set:") {
        return Ok(FiniteStructure::of_set(&hf_arg(lit)?));
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        return Ok(FiniteStructure::from_json(&text)?);
    }
    usage(format!("unknown structure `{spec}` (vlevel:N, set:<literal> or a file)"))
}

/// Splits a comma-separated list of labels, keeping commas nested in braces.
pub fn split_labels(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

/// `VAR=VALUE` pairs.
pub fn split_assignments(items: &[String]) -> Result<Vec<(String, String)>> {
    items
        .iter()
        .map(|s| match s.split_once('=') {
            Some((v, x)) if !v.trim().is_empty() => Ok((v.trim().to_string(), x.trim().to_string())),
            _ => usage(format!("expected VAR=VALUE, got `{s}`")),
        })
        .collect()
}

pub fn set_assignments(items: &[String]) -> Result<BTreeMap<String, HFSet>> {
    split_assignments(items)?
        .into_iter()
        .map(|(v, x)| Ok((v, hf_arg(&x)?)))
        .collect()
}

pub fn name_assignments(items: &[String], m: &Materialized) -> Result<BTreeMap<String, PName>> {
    split_assignments(items)?
        .into_iter()
        .map(|(v, x)| match parse_name(&x, &m.poset, m.unit()) {
            Ok(n) => Ok((v, n)),
            Err(e) => usage(format!("bad name for `{v}`: {e}")),
        })
        .collect()
}

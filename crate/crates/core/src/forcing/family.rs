//! A fixed family of test formulas in the constants `a`, `b`, `c`.
//!
//! The templates cover every connective, both quantifiers and quantifier
//! depth up to two; each is instantiated under all six permutations of the
//! constants and duplicates are dropped, giving 84 formulas.

use std::collections::BTreeSet;

use super::{NameCond, PName, Sentence};
use crate::hf::HFSet;
use crate::logic::{parse_formula, Formula};
use crate::order::PartialFn;

const TEMPLATES: &[&str] = &[
    "(in a b)",
    "(= a b)",
    "(not (in a b))",
    "(and (in a b) (in b c))",
    "(or (in a b) (= a c))",
    "(imp (in a b) (in a c))",
    "(iff (in a b) (in c b))",
    "(ex y (and (in y a) (in y b)))",
    "(all y (imp (in y a) (in y b)))",
    "(ex y (and (in a y) (not (= y c))))",
    "(all y (or (not (in y a)) (= y b)))",
    "(ex y (all z (iff (in z y) (and (in z a) (not (in z b))))))",
    "(all y (imp (in y c) (ex z (and (in z a) (= z y)))))",
    "(ex y (and (in y b) (all z (imp (in z y) (in z a)))))",
];

/// The three constants used by [`test_family`].
pub const CONSTANTS: [&str; 3] = ["a", "b", "c"];

fn permute(f: &Formula, perm: [&str; 3]) -> Formula {
    let tmp = ["__t0", "__t1", "__t2"];
    let mut g = f.clone();
    for (c, t) in CONSTANTS.iter().zip(tmp) {
        g = g.rename_free(c, t);
    }
    for (t, c) in tmp.iter().zip(perm) {
        g = g.rename_free(t, c);
    }
    g
}

/// The formulas, in template order then permutation order.
pub fn test_family() -> Vec<Formula> {
    let perms = [
        ["a", "b", "c"],
        ["a", "c", "b"],
        ["b", "a", "c"],
        ["b", "c", "a"],
        ["c", "a", "b"],
        ["c", "b", "a"],
    ];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in TEMPLATES {
        let f = parse_formula(t).expect("template parses");
        for p in perms {
            let g = permute(&f, p);
            if seen.insert(g.clone()) {
                out.push(g);
            }
        }
    }
    out
}

/// The family with `a`, `b`, `c` read as the given names.
pub fn family_sentences(constants: &[PName; 3]) -> Vec<Sentence> {
    test_family()
        .into_iter()
        .map(|f| Sentence::new(f, CONSTANTS.iter().map(|c| c.to_string()).zip(constants.iter().cloned())))
        .collect()
}

/// `0̌, 1̌, 2̌`.
pub fn check_constants(unit: NameCond) -> [PName; 3] {
    [0, 1, 2].map(|n| PName::check(&HFSet::nat(n), unit))
}

/// Three names of rank at most 2 over a materialized partial-function poset
/// with at least two domain points and two values:
/// `0̌`, `{(0̌, {0:0}), (1̌, {0:1})}` and `{(0̌, {1:1}), (1̌, 1)}`.
/// Returns `None` when one of those conditions is missing.
pub fn partial_fn_constants(conds: &[PartialFn], unit: NameCond) -> Option<[PName; 3]> {
    let at = |pairs: &[(u64, u64)]| {
        let f = PartialFn(pairs.iter().copied().collect());
        conds.iter().position(|c| *c == f).map(NameCond::At)
    };
    let [zero, one, _] = check_constants(unit);
    let b = PName::from_pairs([(zero.clone(), at(&[(0, 0)])?), (one.clone(), at(&[(0, 1)])?)]);
    let c = PName::from_pairs([(zero.clone(), at(&[(1, 1)])?), (one, unit)]);
    Some([zero, b, c])
}

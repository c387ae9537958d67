//! First-order formulas over `=` and `∈`, written as s-expressions.
//!
//! ```text
//! f ::= (= v v) | (in v v) | (not f) | (and f f) | (or f f)
//!     | (imp f f) | (iff f f) | (ex v f) | (all v f)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Var = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Var, Var),
    In(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("arity error at byte {position}: `{head}` takes {expected} arguments, found {found}")]
    Arity {
        position: usize,
        head: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown head `{head}` at byte {position}")]
    UnknownHead { position: usize, head: String },
}

// Convenience constructors, mostly for building formulas in code and tests.
impl Formula {
    pub fn eq(a: &str, b: &str) -> Self {
        Formula::Eq(a.into(), b.into())
    }

    pub fn mem(a: &str, b: &str) -> Self {
        Formula::In(a.into(), b.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    /// Right-nested conjunction, `None` for an empty list.
    pub fn conj(parts: Vec<Formula>) -> Option<Formula> {
        parts.into_iter().rev().reduce(|acc, f| Formula::and(f, acc))
    }

    pub fn disj(parts: Vec<Formula>) -> Option<Formula> {
        parts.into_iter().rev().reduce(|acc, f| Formula::or(f, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::In(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Formula::Eq(a, b) | Formula::In(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(g) => g.visit_vars(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                f(v);
                g.visit_vars(f);
            }
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::In(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }

    /// A variable name not occurring in the formula, derived from `base`.
    pub fn fresh_var(&self, base: &str) -> Var {
        let used = self.all_vars();
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|v| !used.contains(v))
            .expect("unbounded supply of names")
    }

    /// Replaces free occurrences of `from` by `to`. `to` must not be bound
    /// anywhere in the formula (use [`Formula::fresh_var`]).
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        let r = |v: &Var| if v == from { to.to_string() } else { v.clone() };
        match self {
            Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
            Formula::In(a, b) => Formula::In(r(a), r(b)),
            Formula::Not(f) => Formula::not(f.rename_free(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Imp(a, b) => Formula::imp(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Iff(a, b) => Formula::iff(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Exists(v, _) | Formula::Forall(v, _) if v == from => self.clone(),
            Formula::Exists(v, f) => Formula::Exists(v.clone(), Box::new(f.rename_free(from, to))),
            Formula::Forall(v, f) => Formula::Forall(v.clone(), Box::new(f.rename_free(from, to))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::In(a, b) => write!(f, "(in {a} {b})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(iff {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(ex {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(all {v} {g})"),
        }
    }
}

impl FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let sexp = read_sexp(&tokens, &mut pos, text.len())?;
    if pos < tokens.len() {
        return Err(FormulaError::Syntax {
            position: tokens[pos].offset,
            message: "trailing input after formula".into(),
        });
    }
    to_formula(&sexp)
}

#[derive(Debug)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Token<'a> {
    tok: Tok<'a>,
    offset: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' {
            out.push(Token { tok: Tok::Open, offset: i });
            i += 1;
        } else if c == b')' {
            out.push(Token { tok: Tok::Close, offset: i });
            i += 1;
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Atom(&text[start..i]),
                offset: start,
            });
        }
    }
    out
}

enum Sexp<'a> {
    Atom(&'a str, usize),
    List(Vec<Sexp<'a>>, usize),
}

fn read_sexp<'a>(tokens: &[Token<'a>], pos: &mut usize, end: usize) -> Result<Sexp<'a>, FormulaError> {
    let Some(t) = tokens.get(*pos) else {
        return Err(FormulaError::Syntax {
            position: end,
            message: "unexpected end of input".into(),
        });
    };
    *pos += 1;
    match t.tok {
        Tok::Atom(a) => Ok(Sexp::Atom(a, t.offset)),
        Tok::Close => Err(FormulaError::Syntax {
            position: t.offset,
            message: "unexpected ')'".into(),
        }),
        Tok::Open => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => {
                        return Err(FormulaError::Syntax {
                            position: end,
                            message: "unclosed '('".into(),
                        })
                    }
                    Some(Token { tok: Tok::Close, .. }) => {
                        *pos += 1;
                        return Ok(Sexp::List(items, t.offset));
                    }
                    Some(_) => items.push(read_sexp(tokens, pos, end)?),
                }
            }
        }
    }
}

fn var_of(s: &Sexp<'_>) -> Result<Var, FormulaError> {
    match s {
        Sexp::Atom(a, _) => Ok(a.to_string()),
        Sexp::List(_, o) => Err(FormulaError::Syntax {
            position: *o,
            message: "expected a variable".into(),
        }),
    }
}

fn to_formula(s: &Sexp<'_>) -> Result<Formula, FormulaError> {
    let (items, offset) = match s {
        Sexp::List(items, o) => (items, *o),
        Sexp::Atom(_, o) => {
            return Err(FormulaError::Syntax {
                position: *o,
                message: "expected '('".into(),
            })
        }
    };
    let Some((head, args)) = items.split_first() else {
        return Err(FormulaError::Syntax {
            position: offset,
            message: "empty list".into(),
        });
    };
    let head = match head {
        Sexp::Atom(h, _) => *h,
        Sexp::List(_, o) => {
            return Err(FormulaError::Syntax {
                position: *o,
                message: "expected a head symbol".into(),
            })
        }
    };
    let expected = match head {
        "not" => 1,
        "=" | "in" | "and" | "or" | "imp" | "iff" | "ex" | "all" => 2,
        _ => {
            return Err(FormulaError::UnknownHead {
                position: offset,
                head: head.to_string(),
            })
        }
    };
    if args.len() != expected {
        return Err(FormulaError::Arity {
            position: offset,
            head: head.to_string(),
            expected,
            found: args.len(),
        });
    }
    let sub = |i: usize| to_formula(&args[i]).map(Box::new);
    Ok(match head {
        "=" => Formula::Eq(var_of(&args[0])?, var_of(&args[1])?),
        "in" => Formula::In(var_of(&args[0])?, var_of(&args[1])?),
        "not" => Formula::Not(sub(0)?),
        "and" => Formula::And(sub(0)?, sub(1)?),
        "or" => Formula::Or(sub(0)?, sub(1)?),
        "imp" => Formula::Imp(sub(0)?, sub(1)?),
        "iff" => Formula::Iff(sub(0)?, sub(1)?),
        "ex" => Formula::Exists(var_of(&args[0])?, sub(1)?),
        "all" => Formula::Forall(var_of(&args[0])?, sub(1)?),
        _ => unreachable!("head checked above"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_formula("(all y (not (in y x)))").unwrap(),
            Formula::forall("y", Formula::not(Formula::mem("y", "x")))
        );
        assert_eq!(
            parse_formula("(ex y (in y x))").unwrap(),
            Formula::exists("y", Formula::mem("y", "x"))
        );
    }

    #[test]
    fn rejects_bad_arity_and_heads() {
        assert!(matches!(
            parse_formula("(in x)"),
            Err(FormulaError::Arity { expected: 2, found: 1, position: 0, .. })
        ));
        assert!(matches!(parse_formula("(not a b)"), Err(FormulaError::Arity { .. })));
        assert!(matches!(parse_formula("(foo x y)"), Err(FormulaError::UnknownHead { .. })));
        assert!(matches!(
            parse_formula("(and (= x x)"),
            Err(FormulaError::Syntax { position: 12, .. })
        ));
        assert!(matches!(parse_formula("(= x x))"), Err(FormulaError::Syntax { position: 7, .. })));
        assert!(parse_formula("x").is_err());
        assert!(parse_formula("(ex (x) (= x x))").is_err());
        assert!(parse_formula("()").is_err());
    }

    #[test]
    fn free_vars_and_depth() {
        let f = parse_formula("(and (ex y (in y x)) (all z (imp (in z w) (= z y))))").unwrap();
        let fv: Vec<_> = f.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["w", "x", "y"]);
        assert_eq!(f.quantifier_depth(), 1);
        let g = parse_formula("(ex a (all b (in b a)))").unwrap();
        assert!(g.free_vars().is_empty());
        assert_eq!(g.quantifier_depth(), 2);
    }

    #[test]
    fn rename_respects_binders() {
        let f = parse_formula("(and (in x y) (ex x (in x y)))").unwrap();
        let g = f.rename_free("x", "q");
        assert_eq!(g.to_string(), "(and (in q y) (ex x (in x y)))");
        assert_eq!(f.fresh_var("x"), "x0");
    }
}

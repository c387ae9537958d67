//! Names over a finite poset and their Boolean values: check names, the
//! canonical name for the generic filter, and the forcing relation.

use forcelab::forcing::{canonical_generic_name, ForcingBudget, ForcingContext, NameCond, PName, Sentence};
use forcelab::hf::hf_parse;
use forcelab::logic::parse_formula;
use forcelab::order::FinitePoset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = FinitePoset::antichain(2);
    let a0 = NameCond::At(p.lookup("a0")?);
    let empty = PName::check(&hf_parse("{}")?, NameCond::One);
    // τ = {(∅̌, a0)}: it contains ∅ exactly when the generic filter picks a0.
    let tau = PName::from_pairs([(empty.clone(), a0)]);
    let ctx = ForcingContext::new(&p, [empty.clone(), tau.clone()], None, ForcingBudget::default())?;

    let s = Sentence::new(parse_formula("(in x y)")?, [("x".into(), empty.clone()), ("y".into(), tau.clone())]);
    let v = ctx.bool_value(&s)?;
    println!("||∅̌ ∈ τ|| = {{{}}}", v.labels(&p).join(", "));
    for i in 0..p.len() {
        println!("  {} ⊩ ∅̌ ∈ τ: {}", p.label(i), ctx.forces(NameCond::At(i), &s)?);
    }

    let nonempty = Sentence::new(parse_formula("(ex z (in z y))")?, [("y".into(), tau)]);
    println!("||τ ≠ ∅|| = {{{}}}", ctx.bool_value(&nonempty)?.labels(&p).join(", "));

    // Sentences about check names alone get value 0 or 1.
    let one = PName::check(&hf_parse("{{}}")?, NameCond::One);
    let ctx = ForcingContext::new(&p, [empty.clone(), one.clone()], None, ForcingBudget::default())?;
    let s = Sentence::new(parse_formula("(in x y)")?, [("x".into(), empty), ("y".into(), one)]);
    println!("||0̌ ∈ 1̌|| is 1: {}", ctx.bool_value(&s)? == ctx.algebra().one());

    let g = canonical_generic_name(&ctx)?;
    println!("Γ = {}", g.render(&p));
    Ok(())
}

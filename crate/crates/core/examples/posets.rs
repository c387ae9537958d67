//! Finite posets, separative quotients, splitting, and the lazily explored
//! partial-function posets with their standard dense sets.

use forcelab::order::{
    has_splitting_prefix, posets_up_to_iso, standard_refiners, Bound, FinitePoset, PartialFn,
    PartialFnPoset, RefinerKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/top2atoms.json"))?;
    let p = FinitePoset::from_json(&text)?;
    println!("top with two atoms: separative {}, splitting {}", p.is_separative(), p.has_splitting());

    // Adding a condition below one atom only breaks separativity.
    let q = FinitePoset::from_pairs(
        vec!["1".into(), "a".into(), "b".into(), "c".into()],
        &[(1, 0), (2, 0), (3, 1), (3, 0)],
    )?;
    if let Some((x, y)) = q.separativity_counterexample() {
        println!("not separative: {} ≰ {} but every extension of {} meets {}", q.label(x), q.label(y), q.label(x), q.label(y));
    }
    let (quot, proj) = q.separative_quotient();
    println!("quotient has {} classes; projection {proj:?}", quot.len());

    for n in 1..=5 {
        let all = posets_up_to_iso(n);
        let sep = all.iter().filter(|p| p.is_separative()).count();
        println!("posets on {n} points: {} up to isomorphism, {sep} separative", all.len());
    }

    let cohen = PartialFnPoset::cohen(None, 2)?;
    println!("{}: splitting on a prefix: {:?}", cohen.name(), has_splitting_prefix(&cohen, 200, 2000).holds());
    let fin_inj = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4));
    let (m, _) = fin_inj.materialize()?;
    println!("{}: {} conditions", fin_inj.name(), m.len());

    let p0: PartialFn = "{3:1}".parse()?;
    for d in standard_refiners(&cohen, &"domains:0..3".parse::<RefinerKind>()?)? {
        println!("  {} refines {p0} to {}", d.name, d.refine(&p0)?);
    }
    Ok(())
}

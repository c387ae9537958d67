//! Rasiowa–Sikorski filters through countably many dense sets, walked one
//! step at a time, and the injection witnessing that a finite set is
//! countable.

use forcelab::generic::{countability_witness, meets, rs_generic, GenericSession};
use forcelab::hf::hf_parse;
use forcelab::order::{standard_refiners, LazyPoset, PartialFn, PartialFnPoset, RefinerKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cohen = PartialFnPoset::cohen(None, 2)?;
    let domains = standard_refiners(&cohen, &"domains:0..99".parse::<RefinerKind>()?)?;
    let g = rs_generic(&cohen, domains.clone(), PartialFn::empty(), 100)?;
    println!(
        "{}: met {} of {} dense sets; ∪G has domain size {}",
        cohen.name(),
        domains.iter().filter(|d| meets(&g, d)).count(),
        domains.len(),
        g.union().len()
    );

    let fin_inj = PartialFnPoset::fin_inj(forcelab::order::Bound::Omega, forcelab::order::Bound::Omega);
    let mut specs = standard_refiners(&fin_inj, &"domains:0..2".parse::<RefinerKind>()?)?;
    specs.extend(standard_refiners(&fin_inj, &"ranges:5".parse::<RefinerKind>()?)?);
    let mut session = GenericSession::new(&fin_inj, specs, fin_inj.top().expect("top"), 4)?;
    while session.step()? {
        println!("  step {}: {}", session.steps_done(), session.chain().last().expect("nonempty"));
    }
    let g = session.finish()?;
    println!("descending: {}, union {}", g.is_descending(&fin_inj), g.union());

    let s = hf_parse("{{}, {{}}, {{{}}}}")?;
    for (x, n) in countability_witness(&s, 3)? {
        println!("  {x} -> {n}");
    }
    Ok(())
}

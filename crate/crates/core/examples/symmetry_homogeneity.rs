//! Automorphisms acting on names: the symmetry lemma over a family of test
//! sentences, and weak homogeneity forcing check-name sentences to 0 or 1.

use forcelab::forcing::family::{check_constants, family_sentences, partial_fn_constants};
use forcelab::forcing::{
    check_symmetry_lemma, homogeneity_counterexamples, homogeneity_zero_one, is_weakly_homogeneous,
    range_automorphisms, ForcingBudget, ForcingContext, NameCond,
};
use forcelab::order::{Bound, PartialFnPoset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fin_inj = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4));
    let (p, conds) = fin_inj.materialize()?;
    let group = range_automorphisms(&p, &conds, 4)?;
    let unit = p.maximum().map_or(NameCond::One, NameCond::At);
    println!("{}: {} conditions, {} automorphisms", fin_inj.name(), p.len(), group.len());

    let names = partial_fn_constants(&conds, unit).expect("small domain and range");
    let ctx = ForcingContext::new(&p, names.iter().cloned(), Some(group.clone()), ForcingBudget::default())?;
    let sentences = family_sentences(&names);
    let mut failures = 0;
    for s in &sentences {
        for pi in &group {
            failures += usize::from(check_symmetry_lemma(&ctx, s, pi)?.is_some());
        }
    }
    println!("symmetry lemma: {} checks, {failures} failures", sentences.len() * group.len());

    println!("weakly homogeneous: {}", is_weakly_homogeneous(&p, &group).is_ok());
    let checks = check_constants(unit);
    let ctx = ForcingContext::new(&p, checks.iter().cloned(), Some(group), ForcingBudget::default())?;
    let ones = family_sentences(&checks)
        .iter()
        .map(|s| homogeneity_zero_one(&ctx, s))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    println!("check-name family: {ones} sentences with value 1, the rest 0");

    // With only two values every swap of the range fixes too little.
    let fin_partial = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2));
    let (q, conds) = fin_partial.materialize()?;
    let group = range_automorphisms(&q, &conds, 2)?;
    let bad = homogeneity_counterexamples(&q, &group);
    let (a, b) = bad[0];
    println!("{}: {} failing pairs, e.g. ({}, {})", fin_partial.name(), bad.len(), q.label(a), q.label(b));
    Ok(())
}

//! Filters generic over a finite transitive set M containing the code of
//! a poset, and a case where the generic filter is not itself in M.

use forcelab::generic::{encode_poset, m_generic, FiniteModel};
use forcelab::hf::HFSet;
use forcelab::order::{Bound, FinitePoset, PartialFnPoset};

fn codes(p: &FinitePoset, labels: &[&str]) -> HFSet {
    HFSet::from_elements(labels.iter().map(|l| p.code(p.index_of(l).expect("label")).clone()))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let poset = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2));
    let (p, _) = poset.materialize()?;
    let code = encode_poset(&p);
    let total = ["{0:0,1:0}", "{0:0,1:1}", "{0:1,1:0}", "{0:1,1:1}"];
    let with = |extra: &[&str]| codes(&p, &[&total[..], extra].concat());
    let m = FiniteModel::generated_by([
        code.clone(),
        with(&["{0:0}", "{0:1}"]),
        with(&["{1:0}", "{1:1}"]),
        with(&[]),
        with(&["{0:0}"]),
        with(&["{1:1}"]),
    ]);

    let (g, report) = m_generic(&m, &code, None)?;
    println!("M has {} elements; {} dense subsets of P lie in M", m.set().len(), report.dense_sets.len());
    for (d, met) in &report.dense_sets {
        println!("  met: {met:<5} |D| = {}", d.len());
    }
    let members: Vec<&str> = g.members(&report.poset).ones().map(|i| report.poset.label(i)).collect();
    println!("G has {} conditions; G ∈ M: {}", members.len(), report.g_in_m);
    // P has splitting below every condition only when it is infinite; this
    // P is finite, so G ∈ M is possible in principle, but the subsets put in
    // M above do not include this particular G.
    println!("P splits: {}", report.splitting);
    Ok(())
}

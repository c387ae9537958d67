//! The complete Boolean algebra r.o.(P) of a finite separative poset: its
//! elements, the dense embedding, axioms, and common refinements of
//! maximal antichains.

use forcelab::order::FinitePoset;
use forcelab::roalg::{check_boolean_axioms, common_refinement, ro_algebra, Partition, RoBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = FinitePoset::top_two_atoms();
    let alg = ro_algebra(&p, &RoBudget::default())?;
    println!("r.o.(top with two atoms) has {} elements:", alg.len());
    for a in alg.elements() {
        println!("  {{{}}}", a.labels(&p).join(", "));
    }
    let a = alg.dense_embedding("b")?;
    println!("e(b) = {{{}}}, ¬e(b) = {{{}}}", a.labels(&p).join(", "), alg.complement(&a).labels(&p).join(", "));
    println!("axiom violations: {}", check_boolean_axioms(&alg).len());

    // Partitions of unity over the 4-antichain and their common refinement.
    let q = FinitePoset::antichain(4);
    let alg = ro_algebra(&q, &RoBudget::default())?;
    let halves = Partition::new(
        &alg,
        vec![alg.element_from_labels(&["a0", "a1"])?, alg.element_from_labels(&["a2", "a3"])?],
    )?;
    let odd_even = Partition::new(
        &alg,
        vec![alg.element_from_labels(&["a0", "a2"])?, alg.element_from_labels(&["a1", "a3"])?],
    )?;
    let r = common_refinement(&alg, &[halves.clone(), odd_even.clone()])?;
    println!("common refinement: {} cells, refines both: {}", r.len(), r.refines(&halves) && r.refines(&odd_even));

    println!("{}", alg.to_dot("ro_antichain4").lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}

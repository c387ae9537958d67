//! Hereditarily finite sets: literals, Ackermann codes, ranks and the
//! cumulative levels V_n.

use forcelab::hf::{hf_parse, v_level, HFSet, HfBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = HfBudget::default();

    let x = hf_parse("{{}, {{}}, {{{}}}}")?;
    println!("{x}: rank {}, code {}, transitive: {}", x.rank(), x.ackermann_code(&budget)?, x.is_transitive());

    // Codes and sets are two views of the same thing.
    for code in 0..8u64 {
        let s = HFSet::from_code(code);
        assert_eq!(s.small_code(), Some(code));
        println!("  {code:>2} <-> {s}");
    }

    let two = HFSet::nat(2);
    println!("2 = {two}, TC({{2}}) = {}", HFSet::singleton(two.clone()).transitive_closure());

    let k = HFSet::kpair(HFSet::nat(0), HFSet::nat(1));
    println!("(0, 1) = {k}, decoded back as {:?}", k.as_kpair().map(|(a, b)| (a.render(), b.render())));

    for n in 0..=5 {
        println!("|V_{n}| = {}", v_level(n, &budget)?.len());
    }
    Ok(())
}

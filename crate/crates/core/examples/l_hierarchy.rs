//! The finite levels of Gödel's L, L_{n+1} = Def(L_n), compared against
//! V_n, and the relative hierarchy L(X) over a transitive base.

use forcelab::hf::{hf_parse, v_level, HfBudget};
use forcelab::logic::{l_hierarchy, lx_hierarchy, LogicBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = LogicBudget::default();
    let levels = l_hierarchy(5, &budget)?;
    for (n, l) in levels.iter().enumerate() {
        let v = v_level(n, &HfBudget::default())?;
        println!("|L_{n}| = {:>5}   L_{n} = V_{n}: {}", l.len(), *l == v);
    }

    let x = hf_parse("{{}, {{}}}")?;
    let lx = lx_hierarchy(&x, 3, &budget)?;
    let sizes: Vec<usize> = lx.iter().map(Vec::len).collect();
    println!("L(X) over X = {x}: sizes {sizes:?}");
    Ok(())
}

//! Tarski satisfaction over (V_n, ∈) and the definable subsets of a
//! finite structure, parameter-free and with parameters.

use std::collections::BTreeMap;

use forcelab::hf::{hf_parse, HfBudget};
use forcelab::logic::{
    def_by_depth, def_exact_with, defined_set, definable_elements, parse_formula, satisfies, DefMode, FiniteStructure,
    LogicBudget,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v3 = FiniteStructure::v_level(3, &HfBudget::default())?;
    let budget = LogicBudget::default();

    let nonempty = parse_formula("(ex y (in y x))")?;
    let assignment = BTreeMap::from([("x".to_string(), hf_parse("{{}}")?)]);
    println!("V_3 ⊨ ∃y (y ∈ x) at x = {{∅}}: {}", satisfies(&v3, &nonempty, &assignment)?);

    let singletons = parse_formula("(ex y (all z (iff (in z x) (= z y))))")?;
    let defined: Vec<String> = defined_set(&v3, &singletons)?.iter().map(|s| s.render()).collect();
    println!("singletons of V_3: {}", defined.join(", "));

    // V_3 is rigid, so every subset is definable; depth 2 already suffices.
    println!("depth ≤ 2 definable subsets of V_3: {}", def_by_depth(&v3, 2, &budget)?.len());

    // A structure with symmetry: two ∈-incomparable elements cannot be told apart.
    let m = FiniteStructure::new(vec![hf_parse("{}")?, hf_parse("{{{}}}")?, hf_parse("{{{{}}}}")?])?;
    let free = def_exact_with(&m, DefMode::ParameterFree, &budget)?;
    let params = def_exact_with(&m, DefMode::WithParameters, &budget)?;
    println!(
        "domain of 3: {} parameter-free definable subsets, {} with parameters, {} definable elements",
        free.len(),
        params.len(),
        definable_elements(&m, &budget)?.len()
    );
    Ok(())
}

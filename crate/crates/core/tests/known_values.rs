//! Values computed by hand or by independent brute force, frozen here.

use fixedbitset::FixedBitSet;

use forcelab::forcing::{eval_name, Automorphism, ForcingBudget, ForcingContext, NameCond, PName, Sentence};
use forcelab::generic::{countability_witness, encode_poset, m_generic, meets, rs_generic, FiniteModel};
use forcelab::hf::{hf_parse, v_level, HFSet, HfBudget};
use forcelab::logic::{
    automorphisms, def_by_depth, def_exact, defined_set, definable_elements, l_hierarchy, lx_hierarchy,
    parse_formula, FiniteStructure, LogicBudget,
};
use forcelab::order::{standard_refiners, Bound, FinitePoset, PartialFn, PartialFnPoset, RefinerKind};
use forcelab::roalg::{common_refinement, distributivity_report, ro_algebra, ro_closure, Partition, RoBudget};

fn hf(s: &str) -> HFSet {
    hf_parse(s).unwrap()
}

fn v(n: usize) -> FiniteStructure {
    FiniteStructure::v_level(n, &HfBudget::default()).unwrap()
}

fn set_of(p: &FinitePoset, labels: &[&str]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(p.len());
    labels.iter().for_each(|l| s.insert(p.lookup(l).unwrap()));
    s
}

#[test]
fn hereditarily_finite_sets() {
    let x = hf("{{},{{}}}");
    assert_eq!(x.ackermann_code(&HfBudget::default()).unwrap().to_string(), "3");
    assert_eq!(x.rank(), 2);
    assert_eq!(v_level(4, &HfBudget::default()).unwrap().len(), 16);
    assert_eq!(hf("{{{}}}").transitive_closure(), hf("{{},{{}}}"));
    for n in 0..=5 {
        assert!(v_level(n, &HfBudget::default()).unwrap().iter().all(|x| x.rank() as usize <= n));
        assert!(HFSet::from_elements(v_level(n, &HfBudget::default()).unwrap()).is_transitive());
    }
}

#[test]
fn satisfaction_and_definability() {
    let budget = LogicBudget::default();
    let nonempty = parse_formula("(ex y (in y x))").unwrap();
    assert_eq!(defined_set(&v(3), &nonempty).unwrap(), vec![hf("{{}}"), hf("{{{}}}"), hf("{{},{{}}}")]);
    assert_eq!(automorphisms(&v(3), &budget).unwrap().len(), 1);
    assert_eq!(automorphisms(&v(2), &budget).unwrap().len(), 1);
    assert_eq!(def_exact(&v(2), &budget).unwrap().len(), 4);
    assert_eq!(def_exact(&v(3), &budget).unwrap().len(), 16);
    assert_eq!(def_by_depth(&v(2), 1, &budget).unwrap().len(), 4);
    assert_eq!(def_by_depth(&v(3), 2, &budget).unwrap().len(), 16);
    assert_eq!(def_by_depth(&v(3), 3, &budget).unwrap().len(), 16);
    assert_eq!(definable_elements(&v(3), &budget).unwrap().len(), 4);
    assert_eq!(definable_elements(&v(2), &budget).unwrap().len(), 2);
}

#[test]
fn constructible_levels() {
    let budget = LogicBudget::default();
    let ls = l_hierarchy(4, &budget).unwrap();
    let sizes: Vec<usize> = ls.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![0, 1, 2, 4, 16]);
    let mut l4 = ls[4].clone();
    l4.sort();
    assert_eq!(l4, v_level(4, &HfBudget::default()).unwrap());
    let v2 = HFSet::from_elements(v_level(2, &HfBudget::default()).unwrap());
    let lx = lx_hierarchy(&v2, 1, &budget).unwrap();
    assert!(lx[1].contains(&hf("{{}}")));
    assert!(v2.elements().iter().all(|x| lx[1].contains(x)));
    assert_eq!(lx[1].len(), 4);
}

#[test]
fn posets() {
    let (p, _) = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2)).materialize().unwrap();
    assert_eq!(p.len(), 9);
    let (p, _) = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)).materialize().unwrap();
    assert_eq!(p.len(), 21);

    let (p, _) = PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Finite(2)).materialize().unwrap();
    assert!(p.is_dense(&set_of(&p, &["{0:0}", "{0:1}"])));
    assert!(p.is_separative());
    assert_eq!(p.separative_quotient().0.len(), 3);

    let chain = FinitePoset::chain(2);
    assert_eq!(chain.separativity_counterexample(), Some((0, 1)));
    assert_eq!(chain.separative_quotient().0.len(), 1);
    assert!(FinitePoset::top_two_atoms().is_separative());
}

#[test]
fn regular_open_algebras() {
    let p = FinitePoset::top_two_atoms();
    assert_eq!(ro_closure(&p, &set_of(&p, &["b"])).labels(&p), vec!["b"]);
    assert_eq!(ro_closure(&p, &set_of(&p, &["b", "c"])).labels(&p), vec!["a", "b", "c"]);
    let alg = ro_algebra(&p, &RoBudget::default()).unwrap();
    assert_eq!(alg.len(), 4);
    assert_eq!(alg.dense_embedding("b").unwrap().labels(&p), vec!["b"]);
    assert_eq!(ro_algebra(&FinitePoset::antichain(2), &RoBudget::default()).unwrap().len(), 4);

    let q = FinitePoset::from_pairs(vec!["b1".into(), "b2".into(), "b3".into(), "b4".into()], &[]).unwrap();
    let alg = ro_algebra(&q, &RoBudget::default()).unwrap();
    let el = |ls: &[&str]| alg.element_from_labels(ls).unwrap();
    let parts = [
        Partition::new(&alg, vec![el(&["b1", "b2"]), el(&["b3", "b4"])]).unwrap(),
        Partition::new(&alg, vec![el(&["b1", "b3"]), el(&["b2", "b4"])]).unwrap(),
    ];
    let r = common_refinement(&alg, &parts).unwrap();
    let mut cells: Vec<Vec<String>> = r.cells().iter().map(|c| c.labels(&q)).collect();
    cells.sort();
    assert_eq!(cells, vec![vec!["b1"], vec!["b2"], vec!["b3"], vec!["b4"]]);
    let report = distributivity_report(&alg, &parts).unwrap();
    assert!(report.refines_every_input);
    assert_eq!(report.refinement.len(), 4);
}

fn one_point() -> (FinitePoset, PName, usize, usize, usize) {
    let (p, _) = PartialFnPoset::fin_partial(Bound::Finite(1), Bound::Finite(2)).materialize().unwrap();
    let (top, zero, one) = (p.lookup("{}").unwrap(), p.lookup("{0:0}").unwrap(), p.lookup("{0:1}").unwrap());
    let r = PName::from_pairs([(PName::check(&HFSet::empty(), NameCond::At(top)), NameCond::At(one))]);
    (p, r, top, zero, one)
}

#[test]
fn names_and_boolean_values() {
    let (p, r, top, zero, one) = one_point();
    let zero_check = PName::check(&HFSet::empty(), NameCond::At(top));
    let ctx = ForcingContext::new(&p, [r.clone(), zero_check.clone()], None, ForcingBudget::default()).unwrap();
    let s = Sentence::new(parse_formula("(in x r)").unwrap(), [("x".into(), zero_check.clone()), ("r".into(), r.clone())]);
    assert_eq!(ctx.bool_value(&s).unwrap(), ctx.embed(NameCond::At(one)));
    assert!(ctx.forces(NameCond::At(one), &s).unwrap());
    assert!(!ctx.forces(NameCond::At(top), &s).unwrap());
    assert!(!ctx.forces(NameCond::At(zero), &s).unwrap());

    let mut perm = vec![0; 3];
    perm[top] = top;
    perm[zero] = one;
    perm[one] = zero;
    let swap = Automorphism::new(&p, perm).unwrap();
    let image = PName::from_pairs([(zero_check.clone(), NameCond::At(zero))]);
    assert_eq!(swap.apply_name(&r), image);
    let ctx = ForcingContext::new(&p, [r.clone()], Some(vec![swap.clone()]), ForcingBudget::default()).unwrap();
    for q in 0..p.len() {
        let lhs = ctx.forces(NameCond::At(q), &s).unwrap();
        let rhs = ctx.forces(NameCond::At(swap.apply(q)), &swap.apply_sentence(&s)).unwrap();
        assert_eq!(lhs, rhs);
    }

    let with = set_of(&p, &["{}", "{0:1}"]);
    let without = set_of(&p, &["{}", "{0:0}"]);
    assert_eq!(eval_name(&r, &with), hf("{{}}"));
    assert_eq!(eval_name(&r, &without), HFSet::empty());
}

#[test]
fn generic_filters() {
    let cohen = PartialFnPoset::cohen(None, 2).unwrap();
    let d = standard_refiners(&cohen, &"domains:0..4".parse::<RefinerKind>().unwrap()).unwrap();
    let g = rs_generic(&cohen, d, PartialFn::empty(), 5).unwrap();
    assert_eq!(g.union().0.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);

    let d = standard_refiners(&cohen, &"domains:0..2".parse::<RefinerKind>().unwrap()).unwrap();
    assert_eq!(d.len(), 3);
    assert_eq!(d[1].refine(&PartialFn::empty()).unwrap().to_string(), "{1:0}");

    let inj = PartialFnPoset::fin_inj(Bound::Omega, Bound::Omega);
    let r5 = standard_refiners(&inj, &RefinerKind::Ranges(vec![5])).unwrap();
    assert!(r5[0].refine(&PartialFn::empty()).unwrap().in_range(5));

    let d = standard_refiners(&cohen, &"domains:0..99".parse::<RefinerKind>().unwrap()).unwrap();
    let g = rs_generic(&cohen, d.clone(), PartialFn::empty(), 100).unwrap();
    assert!(meets(&g, &d[50]));

    let v3 = HFSet::from_elements(v_level(3, &HfBudget::default()).unwrap());
    let w = countability_witness(&v3, 4).unwrap();
    assert_eq!(w.len(), 4);
    let v4 = HFSet::from_elements(v_level(4, &HfBudget::default()).unwrap());
    let w = countability_witness(&v4, 16).unwrap();
    let mut values: Vec<u64> = w.values().copied().collect();
    values.sort();
    values.dedup();
    assert_eq!(values.len(), 16);
}

#[test]
fn generic_over_a_model_of_the_two_antichain() {
    let p = FinitePoset::from_pairs(vec!["b".into(), "c".into()], &[]).unwrap();
    let code = encode_poset(&p);
    let bc = HFSet::from_elements(p.codes().to_vec());
    let m = FiniteModel::generated_by([code.clone(), bc]);
    let (g, report) = m_generic(&m, &code, Some(&p.code(0).render())).unwrap();
    assert_eq!(report.dense_sets.len(), 1);
    assert_eq!(report.dense_sets[0].0.len(), 2);
    assert!(report.all_met());
    assert_eq!(g.members(&report.poset).ones().count(), 1);
    assert_eq!(g.as_hfset(&report.poset), HFSet::singleton(p.code(0).clone()));
    // The pair (b, b) in the code of P is {{b}}, so {b} is always in M and
    // this G cannot avoid M.
    assert!(report.g_in_m);

    let subsets = [Vec::new(), vec![0], vec![1], vec![0, 1]]
        .map(|s: Vec<usize>| HFSet::from_elements(s.into_iter().map(|i| p.code(i).clone())));
    let m = FiniteModel::generated_by(std::iter::once(code.clone()).chain(subsets));
    let (_, report) = m_generic(&m, &code, None).unwrap();
    assert_eq!(report.dense_sets.len(), 1);
}

#[test]
fn generic_on_one_point_functions_is_total() {
    let (p, _, _, _, _) = one_point();
    let code = encode_poset(&p);
    let dense = HFSet::from_elements([p.code(p.lookup("{0:0}").unwrap()).clone(), p.code(p.lookup("{0:1}").unwrap()).clone()]);
    let m = FiniteModel::generated_by([code.clone(), dense]);
    let (g, report) = m_generic(&m, &code, None).unwrap();
    assert!(report.all_met());
    let members: Vec<usize> = g.members(&report.poset).ones().collect();
    assert_eq!(members.len(), 2);
    assert!(report.poset.maximum().is_some_and(|t| members.contains(&t)));
}

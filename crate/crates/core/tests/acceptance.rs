//! One PASS/FAIL line per acceptance criterion, with timings. Exits nonzero
//! if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use forcelab::forcing::family::{check_constants, family_sentences, partial_fn_constants};
use forcelab::forcing::{
    homogeneity_counterexamples, is_weakly_homogeneous, range_automorphisms, ForcingBudget, ForcingContext, NameCond,
    PName,
};
use forcelab::generic::{countability_witness, encode_poset, m_generic, meets, rs_generic, FiniteModel};
use forcelab::hf::{v_level, HFSet, HfBudget};
use forcelab::logic::{def_by_depth, l_hierarchy, FiniteStructure, LogicBudget};
use forcelab::order::{posets_up_to_iso, standard_refiners, Bound, FinitePoset, PartialFn, PartialFnPoset, RefinerKind};
use forcelab::roalg::{check_boolean_axioms, common_refinement, ro_algebra, Partition, RegularOpenSet, RoBudget};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// V_0 .. V_n by plain powerset iteration over bitmasks.
fn powerset_levels(n: usize) -> Vec<Vec<HFSet>> {
    let mut levels: Vec<Vec<HFSet>> = vec![Vec::new()];
    for _ in 0..n {
        let prev = levels.last().unwrap();
        let k = prev.len();
        let mut next: Vec<HFSet> = (0u64..1 << k)
            .map(|mask| HFSet::from_elements((0..k).filter(|i| mask >> i & 1 == 1).map(|i| prev[i].clone())))
            .collect();
        next.sort();
        levels.push(next);
    }
    levels
}

fn l_equals_v() -> Outcome {
    let budget = LogicBudget::default();
    let ls = l_hierarchy(5, &budget).map_err(err)?;
    let oracle = powerset_levels(5);
    for (n, (l, v)) in ls.iter().zip(&oracle).enumerate() {
        let mut l = l.clone();
        l.sort();
        ensure(l == *v, || format!("L_{n} differs from V_{n} ({} vs {})", l.len(), v.len()))?;
    }
    ensure(ls[5].len() == 65536, || format!("|L_5| = {}", ls[5].len()))?;
    let mut v5 = v_level(5, &HfBudget::default()).map_err(err)?;
    v5.sort();
    ensure(v5 == oracle[5], || "v_level(5) disagrees with powerset iteration".into())?;
    let v3 = FiniteStructure::v_level(3, &HfBudget::default()).map_err(err)?;
    let defs = def_by_depth(&v3, 2, &budget).map_err(err)?;
    let distinct: BTreeSet<Vec<usize>> = defs.iter().map(|s| s.ones().collect()).collect();
    ensure(distinct.len() == 16, || format!("Def_2(V_3) has {} subsets", distinct.len()))?;
    Ok("L_n = V_n for n ≤ 5, |L_5| = 65536, Def_2(V_3) = 16 subsets".into())
}

fn ro_suite() -> Outcome {
    let mut posets = 0;
    let mut checked_elements = 0;
    for n in 1..=6 {
        for p in posets_up_to_iso(n).into_iter().filter(FinitePoset::is_separative) {
            posets += 1;
            let alg = ro_algebra(&p, &RoBudget::default()).map_err(err)?;
            checked_elements += alg.len();
            let v = check_boolean_axioms(&alg);
            ensure(v.is_empty(), || format!("{} violations on a {n}-element poset, first: {}", v.len(), v[0].law))?;
            for a in alg.elements() {
                ensure(alg.complement(&alg.complement(a)) == *a, || "complement not involutive".into())?;
            }
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (alg.embed(x), alg.embed(y));
                    ensure(p.leq(x, y) == ex.is_subset(&ey), || format!("order not reflected at ({x},{y})"))?;
                    ensure(p.compatible(x, y) != alg.meet(&ex, &ey).is_zero(), || {
                        format!("incompatibility not reflected at ({x},{y})")
                    })?;
                }
            }
        }
    }
    Ok(format!("{posets} separative posets (≤ 6 elements), {checked_elements} algebra elements, 0 violations"))
}

fn partial_fn_setup(poset: &PartialFnPoset) -> Result<(FinitePoset, Vec<PartialFn>, NameCond), String> {
    let (p, conds) = poset.materialize().map_err(err)?;
    let unit = p.maximum().map_or(NameCond::One, NameCond::At);
    Ok((p, conds, unit))
}

fn symmetry() -> Outcome {
    let mut checks = 0usize;
    let mut formulas = 0;
    for (poset, range) in [
        (PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2)), 2),
        (PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4)), 4),
    ] {
        let (p, conds, unit) = partial_fn_setup(&poset)?;
        let group = range_automorphisms(&p, &conds, range).map_err(err)?;
        let names = partial_fn_constants(&conds, unit).ok_or("no constants")?;
        ensure(names.iter().all(|n| n.rank() <= 2), || "a constant has rank above 2".into())?;
        let ctx = ForcingContext::new(&p, names.iter().cloned(), Some(group.clone()), ForcingBudget::default())
            .map_err(err)?;
        let sentences = family_sentences(&names);
        formulas = sentences.len();
        for s in &sentences {
            for pi in &group {
                let image = pi.apply_sentence(s);
                for q in 0..p.len() {
                    let lhs = ctx.forces(NameCond::At(q), s).map_err(err)?;
                    let rhs = ctx.forces(NameCond::At(pi.apply(q)), &image).map_err(err)?;
                    ensure(lhs == rhs, || format!("{}: {} at {}", poset.name(), s.formula, p.label(q)))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{formulas} formulas, {checks} (condition, automorphism, formula) checks, 0 violations"))
}

fn homogeneity() -> Outcome {
    let poset = PartialFnPoset::fin_inj(Bound::Finite(2), Bound::Finite(4));
    let (p, conds, unit) = partial_fn_setup(&poset)?;
    let group = range_automorphisms(&p, &conds, 4).map_err(err)?;
    ensure(is_weakly_homogeneous(&p, &group).is_ok(), || "fin_inj(2,4) not weakly homogeneous".into())?;
    let checks = check_constants(unit);
    let mut seeds: Vec<PName> = checks.to_vec();
    seeds.extend(partial_fn_constants(&conds, unit).ok_or("no constants")?);
    let ctx = ForcingContext::new(&p, seeds, Some(group), ForcingBudget::default()).map_err(err)?;
    let (zero, one) = (ctx.algebra().zero(), ctx.algebra().one());
    let sentences = family_sentences(&checks);
    let mut ones = 0;
    for s in &sentences {
        let v = ctx.bool_value(s).map_err(err)?;
        ensure(v == zero || v == one, || format!("||{}|| is neither 0 nor 1", s.formula))?;
        ones += usize::from(v == one);
    }

    let fp = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2));
    let (q, conds, _) = partial_fn_setup(&fp)?;
    let group = range_automorphisms(&q, &conds, 2).map_err(err)?;
    ensure(is_weakly_homogeneous(&q, &group).is_err(), || "fin_partial(2,2) reported homogeneous".into())?;
    let bad = homogeneity_counterexamples(&q, &group);
    let pair = (q.lookup("{0:0,1:0}").map_err(err)?, q.lookup("{0:1,1:0}").map_err(err)?);
    ensure(bad.contains(&pair), || "({0:0,1:0}, {0:1,1:0}) not among the counterexamples".into())?;
    for pi in &group {
        ensure(!q.compatible(pi.apply(pair.0), pair.1), || "the counterexample pair is compatible".into())?;
    }
    Ok(format!(
        "fin_inj(2,4) weakly homogeneous; {} check-name sentences valued 0/1 ({ones} true); fin_partial(2,2) fails at ({{0:0,1:0}}, {{0:1,1:0}})",
        sentences.len()
    ))
}

fn rasiowa_sikorski() -> Outcome {
    let run = || -> Result<(PartialFn, BTreeMap<HFSet, u64>), String> {
        let cohen = PartialFnPoset::cohen(None, 2).map_err(err)?;
        let specs = standard_refiners(&cohen, &RefinerKind::Domains(0, 99)).map_err(err)?;
        let g = rs_generic(&cohen, specs.clone(), PartialFn::empty(), 100).map_err(err)?;
        let met = specs.iter().filter(|d| meets(&g, d)).count();
        ensure(met == 100, || format!("met {met} of 100 dense sets"))?;
        let u = g.union();
        ensure((0..100).all(|a| u.get(a).is_some()), || "union misses a point of 0..99".into())?;
        let v4 = v_level(4, &HfBudget::default()).map_err(err)?;
        let w = countability_witness(&HFSet::from_elements(v4.clone()), 16).map_err(err)?;
        ensure(w.len() == 16 && v4.iter().all(|x| w.contains_key(x)), || "witness is not total on V_4".into())?;
        let values: BTreeSet<u64> = w.values().copied().collect();
        ensure(values.len() == 16, || "witness is not injective".into())?;
        Ok((u, w))
    };
    let start = Instant::now();
    let first = run()?;
    let second = run()?;
    ensure(first == second, || "runs differ".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok("all 100 dense sets met; V_4 injects into ω; identical across runs".into())
}

fn m_genericity() -> Outcome {
    let poset = PartialFnPoset::fin_partial(Bound::Finite(2), Bound::Finite(2));
    let (p, _) = poset.materialize().map_err(err)?;
    ensure(p.len() == 9, || format!("{} conditions", p.len()))?;
    let code = encode_poset(&p);
    let set = |labels: &[&str]| -> Result<HFSet, String> {
        Ok(HFSet::from_elements(
            labels.iter().map(|l| p.lookup(l).map(|i| p.code(i).clone())).collect::<Result<Vec<_>, _>>().map_err(err)?,
        ))
    };
    let total = ["{0:0,1:0}", "{0:0,1:1}", "{0:1,1:0}", "{0:1,1:1}"];
    let with = |extra: &[&str]| set(&[&total[..], extra].concat());
    let m = FiniteModel::generated_by([
        code.clone(),
        with(&["{0:0}", "{0:1}"])?,
        with(&["{1:0}", "{1:1}"])?,
        with(&[])?,
        with(&["{0:0}"])?,
        with(&["{1:1}"])?,
    ]);
    let (g, report) = m_generic(&m, &code, None).map_err(err)?;
    let d = &report.poset;

    // Dense subsets of P in M, found by brute force over the members of M.
    let index: BTreeMap<String, usize> = d.labels().iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut dense = Vec::new();
    for x in m.set().elements() {
        let members: Option<Vec<usize>> = x.elements().iter().map(|e| index.get(&e.render()).copied()).collect();
        let Some(members) = members else { continue };
        if (0..d.len()).all(|q| members.iter().any(|&r| d.leq(r, q))) {
            dense.push(members);
        }
    }
    ensure(dense.len() >= 5, || format!("only {} dense sets in M", dense.len()))?;
    ensure(dense.len() == report.dense_sets.len(), || "dense-set count disagrees".into())?;
    let gm = g.members(d);
    for members in &dense {
        ensure(members.iter().any(|&r| gm.contains(r)), || "G misses a dense set in M".into())?;
    }
    for a in gm.ones() {
        for b in 0..d.len() {
            ensure(!d.leq(a, b) || gm.contains(b), || "G is not upward closed".into())?;
        }
        for b in gm.ones() {
            ensure(gm.ones().any(|c| d.leq(c, a) && d.leq(c, b)), || "G is not directed".into())?;
        }
    }
    let g_set = HFSet::from_elements(gm.ones().map(|i| d.code(i).clone()));
    ensure(!m.contains(&g_set) && !report.g_in_m, || "G ∈ M".into())?;
    Ok(format!("|M| = {}, {} dense sets in M all met, G ∉ M", m.set().len(), dense.len()))
}

fn bits(n: usize, cells: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    cells.iter().for_each(|&i| s.insert(i));
    s
}

fn partition_refinement() -> Outcome {
    let p = FinitePoset::antichain(8);
    let alg = ro_algebra(&p, &RoBudget::default()).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut total_cells = 0;
    for family in 0..20 {
        let k = rng.gen_range(1..=5);
        let mut parts = Vec::new();
        for _ in 0..k {
            let blocks = rng.gen_range(1..=4);
            let assign: Vec<usize> = (0..8).map(|_| rng.gen_range(0..blocks)).collect();
            let cells: Vec<RegularOpenSet> = (0..blocks)
                .map(|b| (0..8).filter(|&a| assign[a] == b).collect::<Vec<_>>())
                .filter(|c| !c.is_empty())
                .map(|c| alg.element(bits(8, &c)))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            parts.push(Partition::new(&alg, cells).map_err(err)?);
        }
        let r = common_refinement(&alg, &parts).map_err(err)?;
        total_cells += r.len();
        // Brute force: nonzero, pairwise disjoint, covering every atom, and
        // each cell inside a cell of every input.
        let cells = r.cells();
        ensure(cells.iter().all(|c| !c.is_zero()), || format!("family {family}: zero cell"))?;
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                ensure(a.bits().is_disjoint(b.bits()), || format!("family {family}: overlapping cells"))?;
            }
        }
        ensure((0..8).all(|x| cells.iter().any(|c| c.contains(x))), || format!("family {family}: not a cover"))?;
        for part in &parts {
            for c in cells {
                ensure(part.cells().iter().any(|q| c.is_subset(q)), || format!("family {family}: does not refine"))?;
            }
        }
    }
    Ok(format!("20 families, {total_cells} refinement cells, all valid"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<u64>);
    let criteria: [Criterion; 7] = [
        ("1 L = V at finite levels", l_equals_v, Some(60)),
        ("2 regular-open completion suite", ro_suite, Some(120)),
        ("3 symmetry lemma", symmetry, None),
        ("4 homogeneity 0/1", homogeneity, None),
        ("5 Rasiowa-Sikorski and countability witness", rasiowa_sikorski, Some(5)),
        ("6 M-genericity", m_genericity, None),
        ("7 partition refinement", partition_refinement, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if secs >= l as f64 => Err(format!("took {secs:.2}s, limit {l}s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}  ({secs:.2}s)  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({secs:.2}s)  {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Result;
use serde_json::{json, Value};

use super::args::{
    formula_arg, hf_arg, name_assignments, set_assignments, split_labels, structure_arg, usage, Materialized, PosetArg,
};
use super::experiment::run_experiment;
use super::{BudgetArgs, Cli, Command, ExperimentCmd, ForcingCmd, GenericCmd, HfCmd, LogicCmd, OrderCmd, Report, SentenceArgs};
use crate::forcing::family::{check_constants, family_sentences, partial_fn_constants};
use crate::forcing::{
    check_symmetry_lemma, homogeneity_counterexamples, homogeneity_zero_one, is_weakly_homogeneous, ForcingContext,
    NameCond, NameUniverse, PName, Sentence,
};
use crate::generic::{countability_witness, encode_poset, m_generic, meets, rs_generic, FiniteModel};
use crate::hf::{v_level, HFSet};
use crate::logic::{
    def_by_depth, def_exact_with, defined_set, definable_elements, l_hierarchy, lx_hierarchy, satisfies, DefMode,
    FiniteStructure,
};
use crate::order::{has_splitting_prefix, LazyPoset, PartialFn, RefinerKind, Splitting};
use crate::roalg::ro_algebra;

pub(super) fn dispatch(cli: &Cli) -> Result<Report> {
    let b = &cli.budgets;
    match &cli.command {
        Command::Hf(c) => hf(c, b),
        Command::Logic(c) => logic(c, b),
        Command::Order(c) => order(c, b, cli.dot.is_some()),
        Command::Forcing(c) => forcing(c, b),
        Command::Generic(c) => generic(c),
        Command::Experiment(ExperimentCmd::Run { config, out_dir }) => run_experiment(config, out_dir.as_deref(), b),
    }
}

fn report(text: String, json: Value) -> Report {
    Report { text, json, dot: None }
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn hf(cmd: &HfCmd, b: &BudgetArgs) -> Result<Report> {
    let budget = b.hf();
    Ok(match cmd {
        HfCmd::Parse { set } => {
            let x = hf_arg(set)?;
            let code = x.ackermann_code(&budget)?;
            report(
                format!("{x}\ncode {code}\nrank {}\n", x.rank()),
                json!({
                    "set": x.render(),
                    "code": code.to_string(),
                    "rank": x.rank(),
                    "size": x.len(),
                    "transitive": x.is_transitive(),
                }),
            )
        }
        HfCmd::Rank { set } => {
            let x = hf_arg(set)?;
            report(format!("{}\n", x.rank()), json!({ "set": x.render(), "rank": x.rank() }))
        }
        HfCmd::Vlevel { n, list } => {
            let level = v_level(*n, &budget)?;
            let mut text = format!("|V_{n}| = {}\n", level.len());
            let mut doc = json!({ "level": n, "size": level.len() });
            if *list {
                for x in &level {
                    writeln!(text, "{x}")?;
                }
                doc["members"] = json!(strings(&level));
            }
            report(text, doc)
        }
        HfCmd::Tc { set } => {
            let x = hf_arg(set)?;
            let tc = x.transitive_closure();
            report(format!("{tc}\n"), json!({ "set": x.render(), "closure": tc.render() }))
        }
    })
}

fn family_json(m: &FiniteStructure, family: &[fixedbitset::FixedBitSet]) -> Vec<Vec<String>> {
    family.iter().map(|s| strings(m.members(s))).collect()
}

fn family_text(title: &str, subsets: &[Vec<String>]) -> String {
    let mut text = format!("{title}: {} subsets\n", subsets.len());
    for s in subsets.iter().take(64) {
        let _ = writeln!(text, "  {{{}}}", s.join(", "));
    }
    if subsets.len() > 64 {
        let _ = writeln!(text, "  ... {} more", subsets.len() - 64);
    }
    text
}

fn logic(cmd: &LogicCmd, b: &BudgetArgs) -> Result<Report> {
    let lb = b.logic();
    Ok(match cmd {
        LogicCmd::Eval {
            structure,
            formula,
            assign,
        } => {
            let m = structure_arg(structure, &b.hf())?;
            let phi = formula_arg(formula)?;
            let holds = satisfies(&m, &phi, &set_assignments(assign)?)?;
            report(
                format!("{holds}\n"),
                json!({ "formula": phi.to_string(), "domain_size": m.size(), "holds": holds }),
            )
        }
        LogicCmd::Def {
            structure,
            formula,
            depth,
            with_parameters,
        } => {
            let m = structure_arg(structure, &b.hf())?;
            if let Some(f) = formula {
                let phi = formula_arg(f)?;
                let set = strings(defined_set(&m, &phi)?);
                return Ok(report(
                    format!("{{{}}}\n", set.join(", ")),
                    json!({ "formula": phi.to_string(), "defined": set }),
                ));
            }
            if let Some(d) = depth {
                let fam = family_json(&m, &def_by_depth(&m, *d, &lb)?);
                return Ok(report(
                    family_text(&format!("definable with depth ≤ {d}"), &fam),
                    json!({ "depth": d, "count": fam.len(), "subsets": fam }),
                ));
            }
            let mode = if *with_parameters {
                DefMode::WithParameters
            } else {
                DefMode::ParameterFree
            };
            let fam = family_json(&m, &def_exact_with(&m, mode, &lb)?);
            let mut text = family_text("definable", &fam);
            let mut doc = json!({ "with_parameters": with_parameters, "count": fam.len(), "subsets": fam });
            if !with_parameters {
                let elems = strings(definable_elements(&m, &lb)?);
                writeln!(text, "definable elements: {}", elems.len())?;
                doc["definable_elements"] = json!(elems);
            }
            report(text, doc)
        }
        LogicCmd::Lhier { levels } => {
            let ls = l_hierarchy(*levels, &lb)?;
            let mut text = String::from(" n  |L_n|  = V_n\n");
            let mut rows = Vec::new();
            for (n, l) in ls.iter().enumerate() {
                let equals_v = (n <= 5).then(|| v_level(n, &b.hf()).map(|v| v == *l)).transpose()?;
                let mark = match equals_v {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "-",
                };
                writeln!(text, "{n:>2}  {:>5}  {mark}", l.len())?;
                rows.push(json!({ "level": n, "size": l.len(), "equals_v": equals_v }));
            }
            report(text, json!({ "levels": rows }))
        }
        LogicCmd::Lxhier { base, levels } => {
            let x = hf_arg(base)?;
            let ls = lx_hierarchy(&x, *levels, &lb)?;
            let mut text = format!("L(X) over X = {x}\n n  |L(X)_n|\n");
            for (n, l) in ls.iter().enumerate() {
                writeln!(text, "{n:>2}  {:>8}", l.len())?;
            }
            let sizes: Vec<usize> = ls.iter().map(Vec::len).collect();
            report(text, json!({ "base": x.render(), "sizes": sizes }))
        }
    })
}

fn splitting_json<C: ToString>(s: &Splitting<C>) -> Value {
    match s {
        Splitting::Holds => json!({ "holds": true }),
        Splitting::Fails(p) => json!({ "holds": false, "witness": p.to_string() }),
        Splitting::Undecided(p) => json!({ "holds": null, "undecided_at": p.to_string() }),
    }
}

fn order(cmd: &OrderCmd, b: &BudgetArgs, want_dot: bool) -> Result<Report> {
    Ok(match cmd {
        OrderCmd::Check { poset } => {
            let arg = PosetArg::parse(poset)?;
            if let PosetArg::PartialFns(p) = &arg {
                if p.materialize().is_err() {
                    let s = has_splitting_prefix(p, 200, 2000);
                    return Ok(report(
                        format!("{}: infinite; splitting on a 200-condition prefix: {s:?}\n", p.name()),
                        json!({ "poset": p.name(), "finite": false, "splitting_prefix": splitting_json(&s) }),
                    ));
                }
            }
            let m = arg.materialize()?;
            let p = &m.poset;
            let sep = p.separativity_counterexample();
            let split = p.splitting();
            let max = p.maximum().map(|i| p.label(i).to_string());
            let mut text = format!("{}\nconditions: {}\n", arg.describe(), p.len());
            writeln!(text, "maximum: {}", max.as_deref().unwrap_or("none"))?;
            match sep {
                None => writeln!(text, "separative: yes")?,
                Some((x, y)) => writeln!(
                    text,
                    "separative: no ({} ≰ {} but every extension of {} is compatible with {})",
                    p.label(x),
                    p.label(y),
                    p.label(x),
                    p.label(y)
                )?,
            }
            writeln!(text, "splitting: {}", if split.holds() { "yes" } else { "no" })?;
            report(
                text,
                json!({
                    "poset": arg.describe(),
                    "conditions": p.labels(),
                    "maximum": max,
                    "separative": sep.is_none(),
                    "separativity_counterexample": sep.map(|(x, y)| [p.label(x), p.label(y)]),
                    "splitting": splitting_json(&split.clone().map_label(p)),
                }),
            )
        }
        OrderCmd::Quotient { poset } => {
            let m = PosetArg::parse(poset)?.materialize()?;
            let (q, proj) = m.poset.separative_quotient();
            let projection: BTreeMap<&str, &str> = proj
                .iter()
                .enumerate()
                .map(|(i, &c)| (m.poset.label(i), q.label(c)))
                .collect();
            let mut text = format!("{} conditions -> {} classes\n", m.poset.len(), q.len());
            for c in q.labels() {
                writeln!(text, "  {c}")?;
            }
            Report {
                text,
                json: json!({ "quotient": q.to_file(), "projection": projection }),
                dot: want_dot.then(|| q.to_dot("quotient")),
            }
        }
        OrderCmd::Roalg { poset } => {
            let m = PosetArg::parse(poset)?.materialize()?;
            let alg = ro_algebra(&m.poset, &b.ro())?;
            let violations = b.axioms(&alg);
            let atoms: Vec<Vec<String>> = alg.atoms().iter().map(|a| a.labels(&m.poset)).collect();
            let checked = match &violations {
                Some(v) => format!("{} axiom violations", v.len()),
                None => format!("axioms not checked (more than {} elements)", b.max_axiom_check),
            };
            let mut text = format!("r.o.(P): {} elements, {} atoms, {checked}\n", alg.len(), atoms.len());
            for e in alg.elements().iter().take(64) {
                writeln!(text, "  {{{}}}", e.labels(&m.poset).join(", "))?;
            }
            Report {
                text,
                json: json!({
                    "size": alg.len(),
                    "algebra": alg.to_export(),
                    "atoms": atoms,
                    "axiom_violations": violations.map(|vs| vs.iter().map(|v| json!({ "law": v.law, "elements": v.elements })).collect::<Vec<_>>()),
                }),
                dot: want_dot.then(|| alg.to_dot("roalg")),
            }
        }
    })
}

trait LabelSplitting {
    fn map_label(self, p: &crate::order::FinitePoset) -> Splitting<String>;
}

impl LabelSplitting for Splitting<usize> {
    fn map_label(self, p: &crate::order::FinitePoset) -> Splitting<String> {
        match self {
            Splitting::Holds => Splitting::Holds,
            Splitting::Fails(i) => Splitting::Fails(p.label(i).to_string()),
            Splitting::Undecided(i) => Splitting::Undecided(p.label(i).to_string()),
        }
    }
}

struct ForcingSetup {
    m: Materialized,
    ctx: ForcingContext,
    sentences: Vec<Sentence>,
}

/// Builds the context and the sentences for a forcing command. With
/// `family`, the built-in family is used with the names given for `a`, `b`,
/// `c`, falling back to `check` (check names only) or the standard
/// partial-function names.
fn forcing_setup(args: &SentenceArgs, b: &BudgetArgs, with_group: bool, family: Option<bool>) -> Result<ForcingSetup> {
    let m = PosetArg::parse(&args.poset)?.materialize()?;
    let given = name_assignments(&args.names, &m)?;
    let sentences = match (family, &args.formula) {
        (Some(checks_only), None) => {
            let unit = m.unit();
            let defaults = if checks_only {
                check_constants(unit)
            } else {
                m.conds
                    .as_deref()
                    .and_then(|c| partial_fn_constants(c, unit))
                    .unwrap_or_else(|| check_constants(unit))
            };
            let mut cs = defaults;
            for (i, v) in ["a", "b", "c"].iter().enumerate() {
                if let Some(n) = given.get(*v) {
                    cs[i] = n.clone();
                }
            }
            family_sentences(&cs)
        }
        (Some(_), Some(_)) => return usage("give either --formula or --family"),
        (None, Some(f)) => vec![Sentence::new(formula_arg(f)?, given.clone())],
        (None, None) => return usage("--formula is required"),
    };
    let mut seeds: Vec<PName> = sentences.iter().flat_map(|s| s.constants.values().cloned()).collect();
    if let Some(r) = args.universe_rank {
        let conds = if args.universe_conds.is_empty() {
            vec![m.unit()]
        } else {
            args.universe_conds
                .iter()
                .map(|l| match m.poset.index_of(l) {
                    Some(i) => Ok(NameCond::At(i)),
                    None if l == "1" => Ok(NameCond::One),
                    None => usage(format!("unknown condition `{l}`")),
                })
                .collect::<Result<_>>()?
        };
        seeds.extend(NameUniverse::up_to_rank(&conds, r, b.max_universe)?.names().iter().cloned());
    }
    let group = if with_group { Some(m.group(&b.logic())?) } else { None };
    let ctx = ForcingContext::new(&m.poset, seeds, group, b.forcing())?;
    Ok(ForcingSetup { m, ctx, sentences })
}

fn forcing(cmd: &ForcingCmd, b: &BudgetArgs) -> Result<Report> {
    Ok(match cmd {
        ForcingCmd::Bval(args) => {
            let ForcingSetup { m, ctx, sentences } = forcing_setup(args, b, false, None)?;
            let v = ctx.bool_value(&sentences[0])?;
            let labels = v.labels(&m.poset);
            let kind = if v.is_zero() {
                "0"
            } else if v == ctx.algebra().one() {
                "1"
            } else {
                "neither 0 nor 1"
            };
            report(
                format!("||φ|| = {{{}}} ({kind})\nuniverse: {} names\n", labels.join(", "), ctx.universe().len()),
                json!({
                    "formula": sentences[0].formula.to_string(),
                    "value": labels,
                    "zero": v.is_zero(),
                    "one": v == ctx.algebra().one(),
                    "universe_size": ctx.universe().len(),
                }),
            )
        }
        ForcingCmd::Forces { sentence, condition } => {
            let ForcingSetup { m, ctx, sentences } = forcing_setup(sentence, b, false, None)?;
            let s = &sentences[0];
            if let Some(l) = condition {
                let p = m.condition(l)?;
                let f = ctx.forces(NameCond::At(p), s)?;
                return Ok(report(format!("{f}\n"), json!({ "condition": l, "forces": f })));
            }
            let ps: Vec<&str> = ctx.forcing_conditions(s)?.into_iter().map(|p| m.poset.label(p)).collect();
            report(
                format!("forced by: {}\n", if ps.is_empty() { "no condition".into() } else { ps.join(", ") }),
                json!({ "formula": s.formula.to_string(), "forcing_conditions": ps }),
            )
        }
        ForcingCmd::Symmetry { sentence, family } => {
            let ForcingSetup { m, ctx, sentences } =
                forcing_setup(sentence, b, true, family.then_some(false))?;
            let group = ctx.group().expect("group attached");
            let mut checks = 0usize;
            let mut violations = Vec::new();
            for s in &sentences {
                for g in group {
                    checks += 1;
                    if let Some(f) = check_symmetry_lemma(&ctx, s, g)? {
                        violations.push(json!({
                            "formula": s.formula.to_string(),
                            "automorphism": g.perm(),
                            "condition": m.poset.label(f.condition),
                            "forces": f.forces,
                            "image_forces": f.image_forces,
                        }));
                    }
                }
            }
            report(
                format!(
                    "{} sentences x {} automorphisms = {checks} checks, {} violations\nuniverse: {} names\n",
                    sentences.len(),
                    group.len(),
                    violations.len(),
                    ctx.universe().len()
                ),
                json!({
                    "sentences": sentences.len(),
                    "automorphisms": group.len(),
                    "checks": checks,
                    "violations": violations,
                    "universe_size": ctx.universe().len(),
                }),
            )
        }
        ForcingCmd::Homog { sentence, family } => {
            let with_sentences = *family || sentence.formula.is_some();
            let m = PosetArg::parse(&sentence.poset)?.materialize()?;
            let group = m.group(&b.logic())?;
            let bad = homogeneity_counterexamples(&m.poset, &group);
            let first = is_weakly_homogeneous(&m.poset, &group).err();
            let pair = |(p, q): (usize, usize)| [m.poset.label(p).to_string(), m.poset.label(q).to_string()];
            let mut text = format!(
                "{} automorphisms; weakly homogeneous: {}\n",
                group.len(),
                if first.is_none() { "yes" } else { "no" }
            );
            if let Some(c) = first {
                let [p, q] = pair(c);
                writeln!(text, "counterexample: no image of {p} is compatible with {q} ({} such pairs)", bad.len())?;
            }
            let mut doc = json!({
                "automorphisms": group.len(),
                "weakly_homogeneous": first.is_none(),
                "counterexample": first.map(pair),
                "counterexamples": bad.into_iter().map(pair).collect::<Vec<_>>(),
            });
            if with_sentences && first.is_none() {
                let ForcingSetup { ctx, sentences, .. } =
                    forcing_setup(sentence, b, true, family.then_some(true))?;
                let mut values = Vec::new();
                for s in &sentences {
                    let v = homogeneity_zero_one(&ctx, s)?;
                    values.push(json!({ "formula": s.formula.to_string(), "value": u8::from(v) }));
                }
                let ones = values.iter().filter(|v| v["value"] == 1).count();
                writeln!(text, "{} sentences: {ones} with value 1, {} with value 0", values.len(), values.len() - ones)?;
                doc["values"] = json!(values);
            }
            report(text, doc)
        }
    })
}

fn generic(cmd: &GenericCmd) -> Result<Report> {
    Ok(match cmd {
        GenericCmd::Rs {
            poset,
            dense,
            horizon,
            seed_condition,
        } => {
            let PosetArg::PartialFns(p) = PosetArg::parse(poset)? else {
                return usage("generic rs needs a partial-function poset (cohen, fin_partial, fin_inj, witness)");
            };
            let mut specs = Vec::new();
            for d in dense {
                let kind: RefinerKind = match d.parse() {
                    Ok(k) => k,
                    Err(e) => return usage(format!("{e}")),
                };
                specs.extend(crate::order::standard_refiners(&p, &kind)?);
            }
            let start = match seed_condition {
                Some(s) => match s.parse::<PartialFn>() {
                    Ok(c) if p.is_condition(&c) => c,
                    _ => return usage(format!("`{s}` is not a condition of {}", p.name())),
                },
                None => p.top().expect("partial-function posets have a top"),
            };
            let g = rs_generic(&p, specs.clone(), start, *horizon)?;
            let met_all = specs.iter().all(|d| meets(&g, d));
            let union = g.union();
            let mut text = format!("{}: {} dense sets, met all: {met_all}\n", p.name(), specs.len());
            writeln!(text, "union: {union}")?;
            let map: Vec<[u64; 2]> = union.0.iter().map(|(x, v)| [*x, *v]).collect();
            report(
                text,
                json!({
                    "poset": p.name(),
                    "dense": g.dense_sets(),
                    "chain": strings(g.chain()),
                    "generators": strings(g.generators()),
                    "union": union.to_string(),
                    "function": map,
                    "met_all": met_all,
                }),
            )
        }
        GenericCmd::Mgeneric {
            poset,
            subsets,
            model,
            poset_code,
            seed_condition,
        } => {
            // Conditions decoded from M are labelled by their codes; when the
            // poset came from a spec, translate back to its own labels.
            let mut names: BTreeMap<String, String> = BTreeMap::new();
            let (model, code) = match (poset, model, poset_code) {
                (Some(spec), None, _) => {
                    let m = PosetArg::parse(spec)?.materialize()?;
                    for p in 0..m.poset.len() {
                        names.insert(m.poset.code(p).render(), m.poset.label(p).to_string());
                    }
                    let code = encode_poset(&m.poset);
                    let mut xs = vec![code.clone()];
                    for s in subsets {
                        let members = split_labels(s)
                            .into_iter()
                            .map(|l| Ok(m.poset.code(m.condition(l)?).clone()))
                            .collect::<Result<Vec<HFSet>>>()?;
                        xs.push(HFSet::from_elements(members));
                    }
                    (FiniteModel::generated_by(xs), code)
                }
                (None, Some(lit), Some(code)) => (FiniteModel::new(hf_arg(lit)?)?, hf_arg(code)?),
                _ => return usage("give --poset (with --subset) or --model with --poset-code"),
            };
            let show = |l: &str| names.get(l).cloned().unwrap_or_else(|| l.to_string());
            let seed = match seed_condition {
                Some(s) if !names.is_empty() => match names.iter().find(|(_, l)| *l == s) {
                    Some((c, _)) => Some(c.clone()),
                    None => return usage(format!("unknown condition `{s}`")),
                },
                other => other.clone(),
            };
            let (g, r) = m_generic(&model, &code, seed.as_deref())?;
            let dense: Vec<(Vec<String>, bool)> = r
                .dense_sets
                .iter()
                .map(|(d, met)| (d.iter().map(|l| show(l)).collect(), *met))
                .collect();
            let mut text = format!(
                "M has {} elements; P has {} conditions; {} dense sets in M\n",
                model.set().len(),
                r.poset.len(),
                dense.len()
            );
            for (d, met) in &dense {
                writeln!(text, "  {{{}}} met: {met}", d.join(", "))?;
            }
            let members: Vec<String> = g.members(&r.poset).ones().map(|p| show(r.poset.label(p))).collect();
            writeln!(text, "G = {{{}}}", members.join(", "))?;
            writeln!(text, "G ∈ M: {}\nsplitting: {}", r.g_in_m, r.splitting)?;
            report(
                text,
                json!({
                    "model_size": model.set().len(),
                    "conditions": r.poset.labels().iter().map(|l| show(l)).collect::<Vec<_>>(),
                    "dense_sets": dense.iter().map(|(d, met)| json!({ "members": d, "met": met })).collect::<Vec<_>>(),
                    "all_met": r.all_met(),
                    "chain": g.chain().iter().map(|&p| show(r.poset.label(p))).collect::<Vec<_>>(),
                    "filter": members,
                    "g": r.g.render(),
                    "g_in_m": r.g_in_m,
                    "splitting": r.splitting,
                }),
            )
        }
        GenericCmd::Witness { set, horizon } => {
            let s = hf_arg(set)?;
            let w = countability_witness(&s, *horizon)?;
            let mut text = String::new();
            for (x, v) in &w {
                writeln!(text, "{x} -> {v}")?;
            }
            let pairs: Vec<Value> = w.iter().map(|(x, v)| json!([x.render(), v])).collect();
            report(text, json!({ "set": s.render(), "injection": pairs }))
        }
    })
}

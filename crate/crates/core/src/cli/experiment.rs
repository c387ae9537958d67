//! Experiments: a sequence of labelled steps, later steps naming the posets
//! built by earlier ones.
//!
//! ```json
//! {
//!   "output_dir": "out",
//!   "steps": [
//!     { "label": "P", "op": "poset", "spec": "fin_inj:2:4" },
//!     { "label": "B", "op": "roalg", "poset": "P" },
//!     { "label": "H", "op": "homogeneity", "poset": "P" },
//!     { "label": "G", "op": "rs_generic", "poset": "P", "dense": ["totality"], "horizon": 4 },
//!     { "label": "M", "op": "m_generic", "poset": "P", "subsets": [["{0:0}", "{0:1}"]] },
//!     { "label": "L", "op": "l_levels", "levels": 4 }
//!   ]
//! }
//! ```
//!
//! Each step's JSON result goes to `<output_dir>/<label>.json`, and
//! `summary.json` lists the steps. Nothing is written unless every step
//! succeeds.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use super::args::{hf_arg, usage, Materialized, PosetArg};
use super::{pretty, write_atomic, BudgetArgs, Report};
use crate::forcing::{homogeneity_counterexamples, is_weakly_homogeneous};
use crate::generic::{encode_poset, m_generic, meets, rs_generic, FiniteModel};
use crate::hf::HFSet;
use crate::logic::{l_hierarchy, lx_hierarchy};
use crate::order::{standard_refiners, LazyPoset, PartialFn, RefinerKind};
use crate::roalg::ro_algebra;

#[derive(Debug, Clone, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Step {
    pub label: String,
    #[serde(flatten)]
    pub action: Action,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Action {
    Poset {
        spec: String,
    },
    Roalg {
        poset: String,
    },
    RsGeneric {
        poset: String,
        dense: Vec<String>,
        horizon: usize,
        #[serde(default)]
        start: Option<String>,
    },
    MGeneric {
        poset: String,
        subsets: Vec<Vec<String>>,
        #[serde(default)]
        start: Option<String>,
    },
    Homogeneity {
        poset: String,
    },
    LLevels {
        levels: usize,
        #[serde(default)]
        base: Option<String>,
    },
}

impl Action {
    fn poset_ref(&self) -> Option<&str> {
        match self {
            Action::Roalg { poset }
            | Action::RsGeneric { poset, .. }
            | Action::MGeneric { poset, .. }
            | Action::Homogeneity { poset } => Some(poset),
            Action::Poset { .. } | Action::LLevels { .. } => None,
        }
    }
}

impl ExperimentConfig {
    /// Parses and checks that labels are unique and that every reference
    /// names an earlier `poset` step.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return usage(format!("invalid experiment configuration: {e}")),
        };
        let mut labels = HashSet::new();
        let mut posets = HashSet::new();
        for step in &cfg.steps {
            if let Some(r) = step.action.poset_ref() {
                if !posets.contains(r) {
                    return usage(format!(
                        "step `{}` refers to `{r}`, which is not an earlier poset step",
                        step.label
                    ));
                }
            }
            if !labels.insert(step.label.as_str()) {
                return usage(format!("duplicate step label `{}`", step.label));
            }
            if matches!(step.action, Action::Poset { .. }) {
                posets.insert(step.label.as_str());
            }
        }
        Ok(cfg)
    }
}

struct Built {
    arg: PosetArg,
    finite: Option<Materialized>,
}

impl Built {
    fn finite(&self, label: &str) -> Result<&Materialized> {
        self.finite
            .as_ref()
            .ok_or_else(|| anyhow::anyhow!("poset `{label}` is infinite and cannot be used here"))
    }
}

fn run_step(action: &Action, posets: &BTreeMap<String, Built>, b: &BudgetArgs) -> Result<Value> {
    let get = |l: &str| posets.get(l).expect("references checked at parse time");
    Ok(match action {
        Action::Poset { spec } => unreachable!("poset steps are built by the caller: {spec}"),
        Action::Roalg { poset } => {
            let m = get(poset).finite(poset)?;
            let alg = ro_algebra(&m.poset, &b.ro())?;
            json!({
                "size": alg.len(),
                "algebra": alg.to_export(),
                "axiom_violations": b.axioms(&alg).map(|v| v.len()),
            })
        }
        Action::Homogeneity { poset } => {
            let m = get(poset).finite(poset)?;
            let group = m.group(&b.logic())?;
            let label = |(p, q): (usize, usize)| [m.poset.label(p).to_string(), m.poset.label(q).to_string()];
            json!({
                "automorphisms": group.len(),
                "weakly_homogeneous": is_weakly_homogeneous(&m.poset, &group).is_ok(),
                "counterexamples": homogeneity_counterexamples(&m.poset, &group).into_iter().map(label).collect::<Vec<_>>(),
            })
        }
        Action::RsGeneric {
            poset,
            dense,
            horizon,
            start,
        } => {
            let PosetArg::PartialFns(p) = &get(poset).arg else {
                return usage(format!("rs_generic needs a partial-function poset, `{poset}` is not one"));
            };
            let mut specs = Vec::new();
            for d in dense {
                let kind: RefinerKind = match d.parse() {
                    Ok(k) => k,
                    Err(e) => return usage(e.to_string()),
                };
                specs.extend(standard_refiners(p, &kind)?);
            }
            let start = match start {
                Some(s) => match s.parse::<PartialFn>() {
                    Ok(c) if p.is_condition(&c) => c,
                    _ => return usage(format!("`{s}` is not a condition of {}", p.name())),
                },
                None => PartialFn::empty(),
            };
            let g = rs_generic(p, specs.clone(), start, *horizon)?;
            json!({
                "chain": g.chain().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "union": g.union().to_string(),
                "met_all": specs.iter().all(|d| meets(&g, d)),
                "dense": g.dense_sets(),
                "splitting": p.top().is_some_and(|t| p.split(&t).is_some()),
            })
        }
        Action::MGeneric { poset, subsets, start } => {
            let m = get(poset).finite(poset)?;
            let code = encode_poset(&m.poset);
            let mut xs = vec![code.clone()];
            for s in subsets {
                let members = s
                    .iter()
                    .map(|l| Ok(m.poset.code(m.condition(l)?).clone()))
                    .collect::<Result<Vec<HFSet>>>()?;
                xs.push(HFSet::from_elements(members));
            }
            let model = FiniteModel::generated_by(xs);
            let (g, r) = m_generic(&model, &code, start.as_deref())?;
            json!({
                "model_size": model.set().len(),
                "dense_sets": r.dense_sets.iter().map(|(d, met)| json!({ "members": d, "met": met })).collect::<Vec<_>>(),
                "all_met": r.all_met(),
                "filter": g.members(&r.poset).ones().map(|p| r.poset.label(p)).collect::<Vec<_>>(),
                "g_in_m": r.g_in_m,
                "splitting": r.splitting,
            })
        }
        Action::LLevels { levels, base } => {
            let ls = match base {
                Some(x) => lx_hierarchy(&hf_arg(x)?, *levels, &b.logic())?,
                None => l_hierarchy(*levels, &b.logic())?,
            };
            json!({ "sizes": ls.iter().map(Vec::len).collect::<Vec<_>>() })
        }
    })
}

/// Runs every step in order and, once all succeeded, writes the artifacts.
pub fn run_experiment(config: &Path, out_dir: Option<&Path>, b: &BudgetArgs) -> Result<Report> {
    let text = std::fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let cfg = ExperimentConfig::parse(&text)?;
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("forcelab-out"));
    let mut posets: BTreeMap<String, Built> = BTreeMap::new();
    let mut results: Vec<(String, Value)> = Vec::new();
    for step in &cfg.steps {
        let value = match &step.action {
            Action::Poset { spec } => {
                let arg = PosetArg::parse(spec)?;
                let finite = match &arg {
                    PosetArg::PartialFns(p) if p.materialize().is_err() => None,
                    _ => Some(arg.materialize()?),
                };
                let v = json!({
                    "poset": arg.describe(),
                    "conditions": finite.as_ref().map(|m| m.poset.labels().to_vec()),
                });
                posets.insert(step.label.clone(), Built { arg, finite });
                v
            }
            action => run_step(action, &posets, b).with_context(|| format!("step `{}`", step.label))?,
        };
        results.push((step.label.clone(), value));
    }
    let mut summary = Vec::new();
    let mut report_text = String::new();
    for (label, value) in &results {
        let file = dir.join(format!("{label}.json"));
        write_atomic(&file, pretty(value).as_bytes())?;
        summary.push(json!({ "label": label, "file": format!("{label}.json") }));
        report_text.push_str(&format!("{label}: {}\n", file.display()));
    }
    let doc = json!({ "steps": summary });
    write_atomic(&dir.join("summary.json"), pretty(&doc).as_bytes())?;
    Ok(Report {
        text: report_text,
        json: json!({ "output_dir": dir.display().to_string(), "results": results.into_iter().collect::<BTreeMap<_, _>>() }),
        dot: None,
    })
}

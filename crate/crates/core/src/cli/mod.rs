//! The `forcelab` command line.
//!
//! Every command builds a [`Report`]: a human-readable text, a JSON document
//! (printed instead of the text under `--json`, written to `--out`), and for
//! some commands a DOT graph (written to `--dot`). Files are written only
//! after the whole computation succeeded, via a temporary file and a rename.
//!
//! Exit codes: 0 on success, 1 when a computation fails (the message names the
//! violated precondition or the budget that tripped), 2 on malformed input.

mod args;
mod commands;
pub mod experiment;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::forcing::ForcingBudget;
use crate::hf::HfBudget;
use crate::logic::LogicBudget;
use crate::roalg::{check_boolean_axioms, AxiomViolation, RegularOpenAlgebra, RoBudget};

pub use args::{PosetArg, UsageError};
pub use experiment::{run_experiment, Action, ExperimentConfig, Step};

#[derive(Debug, Parser)]
#[command(name = "forcelab", version, about = "Desk-scale forcing and definability")]
pub struct Cli {
    /// Print the JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Write the DOT graph, when the command produces one.
    #[arg(long, global = true, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest cumulative-hierarchy level materialized.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub max_level_size: usize,
    /// Largest Ackermann code, in bits.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_code_bits: u64,
    /// Largest automorphism group listed.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub max_automorphisms: usize,
    /// Largest family of definable subsets.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub max_def_family: usize,
    /// Largest quantifier depth for formula enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_depth: usize,
    /// Largest poset handed to the regular-open construction.
    #[arg(long, global = true, default_value_t = 256)]
    pub max_conditions: usize,
    /// Largest regular-open algebra.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub max_elements: usize,
    /// Largest name universe.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_universe: usize,
    /// Largest algebra whose Boolean axioms are checked exhaustively.
    #[arg(long, global = true, default_value_t = 256)]
    pub max_axiom_check: usize,
}

impl BudgetArgs {
    pub fn hf(&self) -> HfBudget {
        HfBudget {
            max_level_size: self.max_level_size,
            max_code_bits: self.max_code_bits,
        }
    }

    pub fn logic(&self) -> LogicBudget {
        LogicBudget {
            max_automorphisms: self.max_automorphisms,
            max_def_family: self.max_def_family,
            max_depth: self.max_depth,
            ..LogicBudget::default()
        }
    }

    pub fn ro(&self) -> RoBudget {
        RoBudget {
            max_conditions: self.max_conditions,
            max_elements: self.max_elements,
        }
    }

    /// The axiom violations, or `None` when the algebra is too large for the
    /// exhaustive check.
    pub fn axioms(&self, alg: &RegularOpenAlgebra) -> Option<Vec<AxiomViolation>> {
        (alg.len() <= self.max_axiom_check).then(|| check_boolean_axioms(alg))
    }

    pub fn forcing(&self) -> ForcingBudget {
        ForcingBudget {
            max_universe: self.max_universe,
            ro: self.ro(),
            ..ForcingBudget::default()
        }
    }
}

impl Default for BudgetArgs {
    fn default() -> Self {
        BudgetArgs {
            max_level_size: 1 << 16,
            max_code_bits: 1 << 20,
            max_automorphisms: 1 << 16,
            max_def_family: 1 << 16,
            max_depth: 4,
            max_conditions: 256,
            max_elements: 1 << 16,
            max_universe: 4096,
            max_axiom_check: 256,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hereditarily finite sets.
    #[command(subcommand)]
    Hf(HfCmd),
    /// Formulas, satisfaction, Def and the L hierarchy.
    #[command(subcommand)]
    Logic(LogicCmd),
    /// Posets, separative quotients and regular-open algebras.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Names, Boolean values, forcing, symmetry and homogeneity.
    #[command(subcommand)]
    Forcing(ForcingCmd),
    /// Generic filters.
    #[command(subcommand)]
    Generic(GenericCmd),
    /// Chained constructions from a JSON configuration.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Debug, Subcommand)]
pub enum HfCmd {
    /// Canonical form, code and rank of a brace literal.
    Parse { set: String },
    Rank { set: String },
    /// The members of V_n.
    Vlevel {
        n: usize,
        /// List the members, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Transitive closure.
    Tc { set: String },
}

#[derive(Debug, Subcommand)]
pub enum LogicCmd {
    /// Decide M ⊨ φ[a].
    Eval {
        /// `vlevel:N`, `set:<literal>` or a JSON file.
        #[arg(long)]
        structure: String,
        #[arg(long)]
        formula: String,
        /// `VAR=<literal>`, repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
    },
    /// Definable subsets: of one formula, by quantifier depth, or exactly.
    Def {
        #[arg(long)]
        structure: String,
        /// A formula with one free variable; prints the set it defines.
        #[arg(long, conflicts_with = "depth")]
        formula: Option<String>,
        /// Subsets definable with quantifier depth at most this.
        #[arg(long)]
        depth: Option<usize>,
        /// Allow parameters from the structure.
        #[arg(long)]
        with_parameters: bool,
    },
    /// |L_0| .. |L_n|.
    Lhier {
        #[arg(long)]
        levels: usize,
    },
    /// |L(X)_0| .. |L(X)_n| for a transitive X.
    Lxhier {
        #[arg(long)]
        base: String,
        #[arg(long)]
        levels: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCmd {
    /// Size, maximum, separativity and splitting.
    Check {
        #[arg(long)]
        poset: String,
    },
    /// The separative quotient.
    Quotient {
        #[arg(long)]
        poset: String,
    },
    /// The regular-open algebra.
    Roalg {
        #[arg(long)]
        poset: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SentenceArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long)]
    pub formula: Option<String>,
    /// `VAR=check:<literal>` or `VAR=<JSON name>`, repeatable.
    #[arg(long = "name")]
    pub names: Vec<String>,
    /// Add every name of rank at most this over `--universe-cond` to the
    /// quantifier range.
    #[arg(long)]
    pub universe_rank: Option<usize>,
    /// Condition labels (or `1`) for `--universe-rank`; defaults to the unit.
    #[arg(long = "universe-cond")]
    pub universe_conds: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum ForcingCmd {
    /// The Boolean value of a sentence.
    Bval(SentenceArgs),
    /// Which conditions force a sentence.
    Forces {
        #[command(flatten)]
        sentence: SentenceArgs,
        /// Only decide this condition.
        #[arg(long)]
        condition: Option<String>,
    },
    /// Check the symmetry lemma over the poset's automorphism group.
    Symmetry {
        #[command(flatten)]
        sentence: SentenceArgs,
        /// Use the built-in family of test formulas.
        #[arg(long)]
        family: bool,
    },
    /// Weak homogeneity, and 0/1 values of check-name sentences.
    Homog {
        #[command(flatten)]
        sentence: SentenceArgs,
        #[arg(long)]
        family: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenericCmd {
    /// Rasiowa–Sikorski through standard dense sets.
    Rs {
        #[arg(long)]
        poset: String,
        /// `domains:LO..HI`, `ranges:R1,R2` or `totality`; repeatable.
        #[arg(long = "dense", required = true)]
        dense: Vec<String>,
        #[arg(long)]
        horizon: usize,
        /// Starting condition, e.g. `{0:1}`.
        #[arg(long)]
        seed_condition: Option<String>,
    },
    /// A filter generic over a finite transitive set.
    Mgeneric {
        /// The poset; M is generated by its code and the `--subset`s.
        #[arg(long, conflicts_with = "model")]
        poset: Option<String>,
        /// Comma-separated condition labels, repeatable.
        #[arg(long = "subset")]
        subsets: Vec<String>,
        /// A transitive set literal used as M.
        #[arg(long, requires = "poset_code")]
        model: Option<String>,
        /// The element of M coding the poset.
        #[arg(long)]
        poset_code: Option<String>,
        #[arg(long)]
        seed_condition: Option<String>,
    },
    /// A total injection of a finite set into ω.
    Witness {
        #[arg(long)]
        set: String,
        #[arg(long)]
        horizon: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    Run {
        config: PathBuf,
        /// Overrides the configuration's output directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// What a command produced. Commands that can draw a graph fill `dot` only
/// when `--dot` was given.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    commands::dispatch(cli)
}

/// Entry point for the binary: parses `std::env::args`, runs, prints, and
/// returns the exit code.
pub fn main() -> i32 {
    main_with(std::env::args_os())
}

pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 };
        }
    };
    let json = pretty(&report.json);
    let mut writes: Vec<(&Path, &[u8])> = Vec::new();
    if let Some(p) = &cli.out {
        writes.push((p, json.as_bytes()));
    }
    match (&cli.dot, &report.dot) {
        (Some(p), Some(d)) => writes.push((p, d.as_bytes())),
        (Some(_), None) => {
            eprintln!("error: this command produces no DOT graph");
            return 2;
        }
        _ => {}
    }
    for (p, bytes) in writes {
        if let Err(e) = write_atomic(p, bytes) {
            eprintln!("error: writing {}: {e}", p.display());
            return 1;
        }
    }
    if cli.json {
        print!("{json}");
    } else {
        print!("{}", report.text);
    }
    0
}

//! Runs the bundled experiment configuration through the library entry
//! point used by `forcelab experiment run`, into a temporary directory.

use forcelab::cli::{run_experiment, BudgetArgs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/experiment.json");
    let out = std::env::temp_dir().join(format!("forcelab-experiment-{}", std::process::id()));
    let report = run_experiment(config.as_ref(), Some(&out), &BudgetArgs::default())?;
    print!("{}", report.text);
    println!("{}", std::fs::read_to_string(out.join("summary.json"))?);
    std::fs::remove_dir_all(&out)?;
    Ok(())
}

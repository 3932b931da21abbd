//! Runs the staged pipeline on every catalog entry and prints the checks.

use f218::workbench::{run_catalog, NAMES};

fn main() -> f218::Result<()> {
    for name in NAMES {
        let run = run_catalog(name)?;
        let failed: Vec<&str> = run.checks.iter().filter(|c| !c.pass()).map(|c| c.name.as_str()).collect();
        println!("{name}: {} checks, all pass: {} {:?}", run.checks.len(), run.all_pass(), failed);
    }
    Ok(())
}

use std::process::ExitCode;

use drinfeld_acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let outcomes = run_all(DEFAULT_SEED);
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("acceptance: {}/{} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

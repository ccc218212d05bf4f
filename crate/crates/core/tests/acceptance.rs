//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use segre_core::verify;

fn main() -> ExitCode {
    let outcomes = verify::run_all(false);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| format!("{} {}", o.id, o.name)).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria pass", outcomes.len(), outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}

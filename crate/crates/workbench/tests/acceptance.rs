use std::process::ExitCode;

use workbench::suite::{run_all, SuiteOptions};

fn main() -> ExitCode {
    let outcomes = run_all(&SuiteOptions::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

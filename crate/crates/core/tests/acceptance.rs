//! Runs the seven acceptance criteria and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;

use hypertrans::selftest::{run_all, SelftestOptions};

fn main() -> ExitCode {
    let results = run_all(&SelftestOptions::default(), false, |r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance criteria 1-9, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always shown.
//!
//! Timed criteria assume an optimized build; the workspace test profile sets
//! `opt-level = 3`. Pass a criterion number to run only that one.

use std::process::ExitCode;

use gdiv::verify::{run, CRITERIA};

fn main() -> ExitCode {
    let only: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, _) in CRITERIA {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let r = run(id);
        println!("{} ({:.2}s)", r.line(), r.elapsed.as_secs_f64());
        if !r.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}

//! One line per criterion; exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use dgalab::accept::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let r = run_criterion(id).expect("known criterion");
        println!("{} ({:.1}s)", r.line(), start.elapsed().as_secs_f64());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}

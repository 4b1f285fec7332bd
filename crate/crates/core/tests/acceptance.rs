//! Runs every acceptance criterion at full size and prints one line each.
//! Exits non-zero if any check is violated.

use std::process::ExitCode;
use std::time::Instant;

use circuit_energy::harness::{run_criterion, Config, Level, CRITERIA};

fn main() -> ExitCode {
    let cfg = Config::new(Level::Full);
    let start = Instant::now();
    let mut failed = 0;
    println!("\nrunning {} acceptance criteria", CRITERIA.len());
    for id in 1..=CRITERIA.len() {
        let out = run_criterion(id, &cfg).expect("known criterion");
        let tried: u64 = out.checks.iter().map(|c| c.instances_tried).sum();
        let verdict = if out.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict} ({} checks, {tried} cases, {} violations, {:.1}s): {}",
            out.checks.len(),
            out.violations(),
            out.wall_time_secs,
            out.title
        );
        if !out.passed() {
            failed += 1;
            for c in out.checks.iter().filter(|c| !c.passed()) {
                println!(
                    "  {} [{}]: {} of {} violated",
                    c.check_id, c.claim, c.violations, c.instances_tried
                );
                if let Some(w) = &c.extremal_witness {
                    println!("    {}", w.replace('\n', "\n    "));
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s\n",
        CRITERIA.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

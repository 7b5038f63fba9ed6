//! Run the whole verification suite — every structural claim the solvers
//! rely on, each checked against an independent second route — and print
//! one line per check.

use evonim::verify::{run_all, VerifyBounds};

fn main() {
    let bounds = VerifyBounds::default();
    let results = run_all(&bounds);

    let mut failures = 0;
    for result in &results {
        let status = if result.passed { "pass" } else { "FAIL" };
        println!("{status}  {:<16} {}", result.name, result.bounds);
        if let Some(witness) = &result.counterexample {
            failures += 1;
            println!("      at {}: expected {}, got {}", witness.position, witness.expected, witness.actual);
        }
    }

    if failures == 0 {
        println!("\nall {} checks passed", results.len());
    } else {
        println!("\n{failures} of {} checks failed", results.len());
        std::process::exit(1);
    }
}

//! Runs every structural audit at n = 4 and prints the combined ledger.

use mra_rank::validation::suites::{run_suite, SUITES};

fn main() -> mra_rank::Result<()> {
    let mut all_passed = true;
    for name in SUITES {
        let report = run_suite(name, 4)?;
        all_passed &= report.passed();
        print!("{report}");
    }
    println!("{}", if all_passed { "all audits passed" } else { "some audits failed" });
    Ok(())
}

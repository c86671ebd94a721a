//! Run the randomized verification suites across the built-in triples and
//! print one summary line per (triple, suite) pair.
//!
//! ```bash
//! cargo run -p liesym --example theorem_suites
//! ```

use liesym::involution::catalog;
use liesym::verify::{run_suite, SuiteConfig, SuiteKind};

fn main() {
    let config = SuiteConfig { trials: 100, seed: 42, scale: 1.0 };
    println!(
        "{:<24} {:<26} {:>6} {:>8} {:>7} {:>14}",
        "triple", "suite", "trials", "failures", "branch", "worst residual"
    );
    for triple in catalog::all() {
        for kind in SuiteKind::all() {
            match run_suite(&triple, kind, &config) {
                Ok(report) => println!(
                    "{:<24} {:<26} {:>6} {:>8} {:>7} {:>14.3e}",
                    report.triple_id,
                    report.suite,
                    report.trials,
                    report.failures,
                    report.branch_failures,
                    report.worst_residual,
                ),
                Err(err) => println!(
                    "{:<24} {:<26} unsupported: {err}",
                    triple.id(),
                    kind.name(),
                ),
            }
        }
    }

    // Reports serialize to JSON deterministically; this is what the CLI
    // `verify` subcommand emits.
    let su2 = catalog::su2();
    let report = run_suite(&su2, SuiteKind::Su2Example, &SuiteConfig { trials: 5, seed: 7, scale: 1.0 })
        .unwrap();
    println!("\nsample JSON report:\n{}", serde_json::to_string_pretty(&report).unwrap());
}

//! Runs every identity sweep at reduced bounds and prints the reports.

use singulex::sweep::{run_sweep, SweepBounds, SweepKind};

fn main() {
    let bounds = SweepBounds { max_n: Some(4), max_m: Some(5), max_a: Some(6), samples: Some(200), ..Default::default() };
    for kind in SweepKind::ALL {
        let r = run_sweep(kind, &bounds);
        println!("{:<16} {:>8} cases  {}", r.kind, r.cases, if r.passed { "ok" } else { "FAILED" });
        if let Some(f) = r.first_failure {
            println!("  first failure: {f}");
        }
    }
}

//! One line per acceptance criterion; exits nonzero if any criterion fails.
//!
//! Criterion 11 needs `BOLKIT_ORDER16_CATALOG` and reports SKIP without it.

use bolkit::selftest::{run, SelftestOptions, Status, TITLES};

fn main() {
    let opts = SelftestOptions::default();
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        let outcome = run(id, &opts);
        println!("{outcome}");
        if outcome.status == Status::Fail {
            failed += 1;
        }
    }
    println!("acceptance: {} criteria, {failed} failed", TITLES.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Runs every property suite on a small model and prints the report.
//!
//! cargo run --release --example property_suites -- 7

use synalg::suites::{self, SuiteConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let report = suites::run(&cfg).expect("valid configuration");
    println!("{report}");
    for line in report.failures() {
        eprintln!("failed: {}.{}", line.suite, line.name);
    }
}

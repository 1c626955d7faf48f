//! Runs the verification suites and prints one line per check.

use hypspinor::config::RunConfig;
use hypspinor::verify::{run, Suite};

fn main() {
    let cfg = RunConfig {
        l_max: 8,
        ..RunConfig::default()
    };
    let report = run(Suite::All, &cfg, None);
    print!("{report}");
    if !report.passed() {
        std::process::exit(1);
    }
}

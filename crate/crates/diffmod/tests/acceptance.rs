//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;

use diffmod::suite::{run_all_with, SuiteConfig};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut all_ok = true;
    run_all_with(&cfg, |r| {
        println!("{}", r.line());
        for d in &r.details {
            println!("    {d}");
        }
        all_ok &= r.ok();
    });
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Runs every named suite on one brace and prints a line per check, the same
//! data `braceforge verify` writes as JSON.
//!
//! ```text
//! cargo run --example verification_suites
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, BraceKind};
use braceforge::json::Structure;
use braceforge::report::Status;
use braceforge::suites::run_suite;

pub fn run_example() -> String {
    let mut out = String::new();
    let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 2 }).unwrap();
    let r = run_suite("all", &Structure::Brace(b)).unwrap();
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass".to_string(),
            Status::Fail => format!("FAIL at {:?}", c.witness),
            Status::Skipped => format!("skipped ({})", c.hypothesis.as_deref().unwrap_or("")),
        };
        let note = if c.informational { " [info]" } else { "" };
        writeln!(out, "{:<60} {status}{note}", c.name).unwrap();
    }
    writeln!(out, "overall: {}", if r.pass { "pass" } else { "fail" }).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

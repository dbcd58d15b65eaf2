//! Canonical JSON for braces, pre-Lie rings and groups, content hashes and
//! the command-line interface driven in-process.
//!
//! ```text
//! cargo run --example json_io
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, BraceKind};
use braceforge::cli::run_args;
use braceforge::json::{brace_to_value, canonical_string, content_hash, parse_structure};

pub fn run_example() -> String {
    let mut out = String::new();
    let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 1 }).unwrap();
    let v = brace_to_value(&b);
    let text = canonical_string(&v);
    write!(out, "{text}").unwrap();
    writeln!(out, "sha256 {}", content_hash(&v)).unwrap();
    writeln!(out, "parses back as a {}", parse_structure(&text).unwrap().kind()).unwrap();

    let dir = std::env::temp_dir().join(format!("braceforge-json-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heisenberg.json");
    let built = run_args(["construct", "--kind", "heisenberg", "--p", "3", "--out", path.to_str().unwrap()]);
    let analyzed = run_args(["analyze-group", "--input", path.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&analyzed.stdout).unwrap();
    writeln!(
        out,
        "construct exit {}, analyze-group exit {}: class {}, powerful {}",
        built.code, analyzed.code, report["summary"]["class"], report["summary"]["powerful"]
    )
    .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

//! The closed-form bounds on derived length and generator counts, and their
//! comparison with actual braces.
//!
//! ```text
//! cargo run --example fixed_point_bounds
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, BraceKind};
use braceforge::group::{bound_formulas, verify_bounds_on_instance};

pub fn run_example() -> String {
    let mut out = String::new();
    for (p, k, m) in [(5, 1, 1), (3, 1, 2), (7, 2, 1)] {
        let b = bound_formulas(p, k, m).unwrap();
        writeln!(
            out,
            "p={p} k={k} m={m}: f ≈ {:.6} (ceiling {}), d ≤ {}",
            b.f.value, b.f.ceiling, b.d_bound
        )
        .unwrap();
    }

    let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
    // an element of ∘-order 5
    let r = verify_bounds_on_instance(&b, 1).unwrap();
    writeln!(out, "triangular(5,3), a = 1: derived length {}, |Fix(a)| = 5^{}", r.derived_length, r.fix_log).unwrap();
    for c in &r.checks {
        match c.skipped {
            Some(h) => writeln!(out, "  {}: skipped ({h})", c.name).unwrap(),
            None => writeln!(out, "  {}: {} ≤ {} {}", c.name, c.lhs, c.rhs, if c.holds { "holds" } else { "FAILS" }).unwrap(),
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

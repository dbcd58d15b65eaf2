//! Builds the standard braces, checks their axioms and prints the left,
//! right and strong nilpotency chains of each.
//!
//! ```text
//! cargo run --example construct_braces
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, verify_brace_axioms, BraceKind};

pub fn run_example() -> String {
    let mut out = String::new();
    let kinds = [
        BraceKind::Trivial { p: 5, exponents: vec![2, 1] },
        BraceKind::RadicalCyclic { p: 5, n: 3 },
        BraceKind::RadicalTriangular { p: 3, d: 3 },
        BraceKind::RadicalTwisted { p: 5 },
        BraceKind::DirectSum {
            left: Box::new(BraceKind::RadicalCyclic { p: 5, n: 2 }),
            right: Box::new(BraceKind::Trivial { p: 5, exponents: vec![1] }),
        },
    ];
    for kind in kinds {
        let b = construct(&kind).expect("corpus braces are valid");
        let axioms = verify_brace_axioms(&b);
        let chains = b.nilpotency_chains().summary();
        writeln!(
            out,
            "{}: order {}, axioms {}, left {:?}, right {:?}, strong {:?}, ∘ commutative {}",
            serde_json::to_string(&kind).unwrap(),
            b.order(),
            if axioms.passed() { "hold" } else { "fail" },
            chains.left_sizes,
            chains.right_sizes,
            chains.strong_sizes,
            b.is_circ_commutative(),
        )
        .unwrap();
    }

    // in Z/125 with a*b = 5ab, 1∘1 = 1 + 1 + 5
    let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 3 }).unwrap();
    writeln!(out, "1∘1 = {}, λ_1(1) = {}", b.circ(1, 1), b.lambda(1, 1)).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

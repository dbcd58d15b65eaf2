//! The pre-Lie rings attached to a brace with p > n+1: the averaged product on
//! pA, the bullet product on A/ann(p²) and, for strongly nilpotent braces, the
//! averaged product on all of A.
//!
//! ```text
//! cargo run --example prelie_from_brace
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, BraceKind};
use braceforge::prelie::{prelie_nilpotency, verify_prelie_axioms};
use braceforge::transform::{strong_dot, BraceTransforms, StrongDotVariant};

pub fn run_example() -> String {
    let mut out = String::new();
    for kind in [
        BraceKind::RadicalCyclic { p: 5, n: 3 },
        BraceKind::RadicalTriangular { p: 5, d: 3 },
        BraceKind::RadicalTwisted { p: 5 },
    ] {
        let b = construct(&kind).unwrap();
        let t = BraceTransforms::new(&b).expect("p > n+1");
        writeln!(out, "{kind:?}: ξ = {} (γ = {})", t.xi().value(), t.xi().gamma()).unwrap();

        let dot = t.dot_pa_ring().unwrap();
        writeln!(out, "  pA: order {}, associative {}", dot.order(), dot.is_associative()).unwrap();

        let bullet = t.bullet_table();
        writeln!(
            out,
            "  A/ann(p²): order {}, pre-Lie {}, cross-check {}",
            bullet.order(),
            verify_prelie_axioms(&bullet).passed(),
            t.bullet_cross_check().is_none(),
        )
        .unwrap();

        match strong_dot(&t, StrongDotVariant::STANDARD) {
            Ok(s) => {
                let n = prelie_nilpotency(&s).summary();
                writeln!(out, "  A: strong chain {:?}", n.strong_sizes).unwrap();
            }
            Err(e) => writeln!(out, "  A: {e}").unwrap(),
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

//! From a pre-Lie ring back to a brace, and the full round trip
//! brace → pre-Lie ring → brace.
//!
//! ```text
//! cargo run --example group_of_flows
//! ```

use std::fmt::Write;

use braceforge::abelian::AbelianPGroup;
use braceforge::brace::{construct, BraceKind};
use braceforge::flows::{group_of_flows, roundtrip_check, FlowsContext};
use braceforge::prelie::PreLieRing;

pub fn run_example() -> String {
    let mut out = String::new();

    // Z/25 with a·b = 5ab stands for 5Z/125 with the ring product
    let ring = PreLieRing::radical_cyclic(5, 2).unwrap();
    let ctx = FlowsContext::new(ring.clone()).unwrap();
    let omega = ctx.omega(1).unwrap();
    writeln!(out, "W(1) = {}, Ω(1) = {omega}, W(Ω(1)) = {}", ctx.w_map(1), ctx.w_map(omega)).unwrap();
    let b = group_of_flows(&ring).unwrap();
    let direct = construct(&BraceKind::RadicalCyclic { p: 5, n: 2 }).unwrap();
    writeln!(out, "associative ring gives a∘b = a+b+ab: {}", b == direct).unwrap();

    let zero = PreLieRing::zero(AbelianPGroup::new(5, vec![1, 1]).unwrap());
    let t = group_of_flows(&zero).unwrap();
    writeln!(out, "zero product gives the trivial brace: {}", t.star_table().iter().all(|&x| x == 0)).unwrap();

    for kind in [
        BraceKind::RadicalCyclic { p: 5, n: 3 },
        BraceKind::RadicalTriangular { p: 5, d: 3 },
        BraceKind::RadicalCyclic { p: 3, n: 3 },
    ] {
        let b = construct(&kind).unwrap();
        match roundtrip_check(&b) {
            Ok(r) => {
                let variants: Vec<String> = r
                    .outcomes
                    .iter()
                    .map(|o| match &o.skipped {
                        Some(h) => format!("{} skipped ({h})", o.variant),
                        None => format!("{} {}", o.variant, if o.pass { "ok" } else { "differs" }),
                    })
                    .collect();
                writeln!(out, "{kind:?}: pass {}; {}", r.pass, variants.join(", ")).unwrap();
            }
            Err(e) => writeln!(out, "{kind:?}: {e}").unwrap(),
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

//! Finite p-groups as tables: series, powerful and uniform groups, the graded
//! Lie ring L(G), the Lie rings M_i(G) and coclass.
//!
//! The metacyclic group Z/25 ⋊ Z/5 is powerful, yet its graded Lie ring is
//! not: G^p lies in degree 2, where it is not a multiple of p.
//!
//! ```text
//! cargo run --example graded_lie
//! ```

use std::fmt::Write;

use braceforge::brace::{construct, BraceKind};
use braceforge::group::{graded_lie_ring, lazard_lie, lie_subring_of_subgroup, FiniteGroupTable};

pub fn run_example() -> String {
    let mut out = String::new();
    let groups = [
        ("Heisenberg(5)", FiniteGroupTable::heisenberg(5).unwrap()),
        ("Z/125", FiniteGroupTable::cyclic(5, 3).unwrap()),
        ("Z/25 ⋊ Z/5", FiniteGroupTable::metacyclic(5, 2, 1, 6).unwrap()),
        (
            "adjoint of triangular(5,3)",
            FiniteGroupTable::adjoint_group(&construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap())
                .unwrap(),
        ),
    ];
    for (name, g) in &groups {
        let l = graded_lie_ring(g).unwrap();
        let pl = l.lie.group().p_power_multiples(1);
        let sub = lie_subring_of_subgroup(g, &l, &g.power_subgroup(g.prime())).unwrap();
        let cc = g.coclass();
        writeln!(
            out,
            "{name}: class {}, powerful {}, |L| = {}, L powerful {}, L(G,G^p) ⊆ pL {}, coclass {}",
            g.class(),
            g.is_powerful(),
            l.order(),
            l.lie.is_powerful(),
            sub.is_subset_of(&pl),
            cc.b,
        )
        .unwrap();
    }

    let u = FiniteGroupTable::metacyclic(3, 3, 3, 4).unwrap();
    let m = lazard_lie(&u, 1).unwrap();
    writeln!(out, "Z/27 ⋊ Z/27: uniform {}, |M_1| = {}, M_1 powerful {}", u.is_uniform(), m.lie.order(), m.lie.is_powerful())
        .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}

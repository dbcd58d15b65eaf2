//! Named verification suites. Each turns a family of statements into
//! exhaustive checks on one input structure.

use num_bigint::BigUint;
use serde_json::json;

use crate::brace::{
    ann, circ_power, circ_power_binomial, circ_power_subgroup, engel_rhs, filtration_violation,
    pa_ideal, star_after_circ_power_binomial, sub_brace_pa, verify_brace_axioms, Brace,
    PowerSubgroupSizes,
};
use crate::error::{Error, Result};
use crate::flows::roundtrip_check;
use crate::group::{
    graded_lie_ring, lazard_lie, lie_subring_of_subgroup, BoundsContext, FiniteGroupTable,
};
use crate::json::Structure;
use crate::numtheory::xi;
use crate::prelie::{associated_lie, is_powerful_prelie, prelie_nilpotency, verify_prelie_axioms, PreLieRing};
use crate::report::{axiom_checks, Check, Status, Target, VerificationReport};
use crate::sweep::{all, first_pair, first_single, first_triple};
use crate::transform::{
    require_strong_index_below_p, strong_dot, strong_dot_bullet_consistency, BraceTransforms,
    PullbackSection, StrongDotVariant,
};

const BRACE_SUITES: &[&str] = &[
    "brace-axioms",
    "engel-expansion",
    "circ-power-binomial",
    "power-subgroups",
    "xi-unit",
    "pa-filtration",
    "dot-pa",
    "odot-well-defined",
    "bullet-prelie",
    "roundtrip",
    "powerful-adjoint",
    "bounds",
];
const GROUP_SUITES: &[&str] = &["graded-lie", "coclass"];
const PRELIE_SUITES: &[&str] = &["prelie-nilpotency"];

/// Every accepted suite name, `all` last.
pub fn suite_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = BRACE_SUITES.iter().chain(GROUP_SUITES).chain(PRELIE_SUITES).copied().collect();
    v.push("all");
    v
}

/// Runs a suite. Unknown names and suites that do not apply to the input
/// kind are usage errors; mathematical outcomes live in the report.
pub fn run_suite(name: &str, s: &Structure) -> Result<VerificationReport> {
    let target = Target::of(s);
    let names: Vec<&str> = if name == "all" {
        match s {
            Structure::Brace(_) => BRACE_SUITES.iter().chain(GROUP_SUITES).copied().collect(),
            Structure::Group(_) => GROUP_SUITES.to_vec(),
            Structure::PreLie(_) => PRELIE_SUITES.to_vec(),
        }
    } else {
        vec![name]
    };
    let mut checks = Vec::new();
    // braces are checked once up front; later suites assume the axioms
    let mut gate = true;
    for n in names {
        let found = match s {
            Structure::Brace(b) => {
                let r = brace_suite(n, b, gate);
                gate = false;
                r
            }
            Structure::Group(g) => group_suite(n, g).map(Ok),
            Structure::PreLie(p) => prelie_suite(n, p).map(Ok),
        };
        let found = match found {
            Some(r) => r?,
            None if suite_names().contains(&n) => {
                return Err(Error::Contract(format!("suite {n} does not apply to a {}", s.kind())))
            }
            None => {
                return Err(Error::Contract(format!(
                    "unknown suite {n}; expected one of {}",
                    suite_names().join(", ")
                )))
            }
        };
        let stop = n == "brace-axioms" && found.iter().any(|c| c.status == Status::Fail);
        checks.extend(found.into_iter().map(|mut c| {
            c.name = format!("{n}/{}", c.name);
            c
        }));
        if stop {
            break;
        }
    }
    Ok(VerificationReport::new(name, target, checks))
}

fn brace_suite(name: &str, b: &Brace, gate: bool) -> Option<Result<Vec<Check>>> {
    let run: fn(&Brace) -> Result<Vec<Check>> = match name {
        "brace-axioms" => |b| Ok(axiom_checks("axiom", &verify_brace_axioms(b))),
        "engel-expansion" => engel_expansion,
        "circ-power-binomial" => circ_power_binomial_checks,
        "power-subgroups" => power_subgroups,
        "xi-unit" => |b| Ok(xi_checks(b.prime())),
        "pa-filtration" => pa_filtration,
        "dot-pa" => dot_pa,
        "odot-well-defined" => odot_well_defined,
        "bullet-prelie" => bullet_prelie,
        "roundtrip" => roundtrip,
        "powerful-adjoint" => powerful_adjoint,
        "bounds" => bounds,
        "graded-lie" | "coclass" => {
            return Some(FiniteGroupTable::adjoint_group(b).map(|g| group_suite(name, &g).expect("group suite exists")))
        }
        _ => return None,
    };
    if name == "brace-axioms" || !gate {
        return Some(run(b));
    }
    // everything else presupposes a brace
    let axioms = verify_brace_axioms(b);
    if !axioms.passed() {
        return Some(Ok(axiom_checks("axiom", &axioms)));
    }
    Some(run(b))
}

fn gated(name: &str, anchor: &str, r: Result<Vec<Check>>) -> Result<Vec<Check>> {
    match r {
        Ok(v) => Ok(v),
        Err(e @ (Error::Hypothesis { .. } | Error::Axiom { .. } | Error::Internal(_))) => {
            Ok(vec![Check::from_error(name, anchor, &e)])
        }
        Err(e) => Err(e),
    }
}

fn engel_expansion(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "(a+b)*c expands as an alternating sum through the left nilpotency index";
    let chains = b.nilpotency_chains();
    let Some(s) = chains.left_index() else {
        return Ok(vec![Check::skipped("expansion", ANCHOR, "left nilpotent")]);
    };
    let g = b.group();
    let xs = all(b.order());
    let v = first_triple(&xs, &xs, &xs, |a, x, c| {
        (b.star(g.add(a, x), c) != engel_rhs(b, s, a, x, c)).then_some("expansion")
    });
    Ok(vec![Check::from_violation("expansion", ANCHOR, v).with_detail(json!({ "left_index": s }))])
}

/// Iterated ∘-powers against the binomial sums, for `1 ≤ k ≤ p²`.
fn circ_power_binomial_checks(b: &Brace) -> Result<Vec<Check>> {
    let p = b.prime();
    let top = p * p;
    let xs = all(b.order());
    let powers = first_single(&xs, |a| {
        let mut acc = 0u32;
        for k in 1..=top {
            acc = b.circ(acc, a);
            if acc != circ_power_binomial(b, a, k) || acc != circ_power(b, a, k) {
                return Some("a^∘k = Σ C(k,i) a_i");
            }
        }
        None
    });
    let star = first_pair(&xs, &xs, |a, x| {
        let mut acc = 0u32;
        for k in 1..=top {
            acc = b.circ(acc, a);
            if b.star(acc, x) != star_after_circ_power_binomial(b, a, x, k) {
                return Some("a^∘k * x = Σ C(k,i) e_i");
            }
        }
        None
    });
    Ok(vec![
        Check::from_violation("power", "a^∘k = Σ_{i=1}^{k} C(k,i) a_i for k ≤ p²", powers),
        Check::from_violation("star", "a^∘k * x = Σ_{i=1}^{k} C(k,i) e_i for k ≤ p²", star),
    ])
}

fn power_subgroups(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "A^∘(p^i) = {a^∘(p^i)} = p^i A";
    let mut out = Vec::new();
    for i in 0..=b.log_order() {
        let name = format!("i={i}");
        match circ_power_subgroup(b, i) {
            Ok(r) => out.push(Check::from_bool(name, ANCHOR, r.all_equal()).with_detail(PowerSubgroupSizes::from(&r))),
            Err(e) => {
                out.push(Check::from_error(name, ANCHOR, &e));
                if e.hypothesis_name().is_some() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `ξ^(p-1) ≡ 1 mod p^p`, and `ξ` has order exactly `p - 1` modulo `p`.
pub fn xi_checks(p: u64) -> Vec<Check> {
    let x = match xi(p) {
        Ok(x) => x,
        Err(e) => return vec![Check::from_error("xi", "ξ exists", &e)],
    };
    let one = BigUint::from(1u32);
    let unit = x.value().modpow(&BigUint::from(p - 1), x.modulus()) == one;
    let r = x.value_mod(p);
    let mut pow = 1u64;
    let mut exact = true;
    for _ in 1..p - 1 {
        pow = pow * r % p;
        exact &= pow != 1;
    }
    let detail = json!({ "xi": x.value().to_string(), "gamma": x.gamma() });
    vec![
        Check::from_bool("unit", "ξ^(p-1) ≡ 1 mod p^p", unit).with_detail(detail),
        Check::from_bool("order", "ξ^j ≢ 1 mod p for 0 < j < p-1", exact),
    ]
}

fn pa_filtration(b: &Brace) -> Result<Vec<Check>> {
    const SUB: &str = "pA is a sub-brace";
    let mut out = vec![Check::from_violation(
        "filtration",
        "(p^i A)*(p^j A) ⊆ p^(i+j) A",
        filtration_violation(b),
    )];
    match sub_brace_pa(b) {
        Ok(s) => {
            out.push(Check::pass("sub-brace", SUB));
            out.push(Check::from_bool("top-power", "p^(p-1) A = 0", s.top_power_vanishes));
            out.push(
                Check::from_bool("strong-index", "pA is strongly nilpotent of index ≤ p-1", s.index_bound_holds)
                    .with_detail(json!({ "strong_index": s.strong_index })),
            );
        }
        Err(e) => out.push(Check::from_error("sub-brace", SUB, &e)),
    }
    for i in 1..=b.log_order() {
        let a = ann(b, i);
        out.push(
            Check::from_bool(format!("ann-ideal/{i}"), "ann(p^i) is an ideal", a.is_ideal)
                .with_detail(json!({ "order": a.carrier.len() }))
                .informational(),
        );
        let name = format!("pa-ideal/{i}");
        out.push(
            match pa_ideal(b, i) {
                Ok(_) => Check::pass(name, "p^i A is an ideal"),
                Err(e) => Check::from_error(name, "p^i A is an ideal", &e),
            }
            .informational(),
        );
    }
    Ok(out)
}

fn transforms(b: &Brace) -> std::result::Result<BraceTransforms<'_>, Error> {
    BraceTransforms::new(b)
}

fn dot_pa(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "(pA, +, ·) is a pre-Lie ring";
    let t = match transforms(b) {
        Ok(t) => t,
        Err(e) => return gated("pre-lie", ANCHOR, Err(e)),
    };
    let mut out = axiom_checks("scope", &t.dot_pa_scope_report());
    match t.dot_pa_table() {
        Ok(r) => out.extend(axiom_checks("pa", &verify_prelie_axioms(&r))),
        Err(e) => out.push(Check::from_error("pre-lie", ANCHOR, &e)),
    }
    Ok(out)
}

/// A second section of `pA → A`: the canonical one shifted through `ann(p)`.
fn alternative_section(b: &Brace) -> Result<PullbackSection> {
    let g = b.group();
    let ann = g.annihilator(1);
    let members = ann.members().to_vec();
    PullbackSection::shifted(g, move |a| members[a as usize % members.len()])
}

fn odot_well_defined(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "[a]⊙[b] = [℘⁻¹((pa)*b)] is independent of representatives";
    let t = match transforms(b) {
        Ok(t) => t,
        Err(e) => return gated("independence", ANCHOR, Err(e)),
    };
    let alt = alternative_section(b)?;
    let mut out = axiom_checks("section", &t.pullback().verify(b.group(), t.quotient()));
    out.extend(axiom_checks("shifted-section", &alt.verify(b.group(), t.quotient())));
    out.push(Check::from_violation("independence", ANCHOR, t.odot_dependence(&alt)));
    Ok(out)
}

fn bullet_prelie(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "(A/ann(p²), +, •) is a pre-Lie ring";
    let t = match transforms(b) {
        Ok(t) => t,
        Err(e) => return gated("pre-lie", ANCHOR, Err(e)),
    };
    let table = t.bullet_table();
    let mut out = axiom_checks("bullet", &verify_prelie_axioms(&table));
    out.push(
        Check::from_violation("cross-check", "[x]•[y] = [℘⁻¹((px)·y)]", t.bullet_cross_check())
            .with_detail(json!({ "quotient_order": table.order() })),
    );
    let consistency = require_strong_index_below_p(b)
        .and_then(|_| strong_dot(&t, StrongDotVariant::STANDARD))
        .map(|d| strong_dot_bullet_consistency(&t, &d));
    out.push(
        match consistency {
            Ok(v) => Check::from_violation("strong-consistency", "[a]•[b] = [a·b]", v),
            Err(e) => Check::from_error("strong-consistency", "[a]•[b] = [a·b]", &e),
        }
        .informational(),
    );
    Ok(out)
}

fn roundtrip(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "the group of flows of the scaled pre-Lie ring gives back the brace";
    let r = match roundtrip_check(b) {
        Ok(r) => r,
        Err(e) => return gated("strong", ANCHOR, Err(e)),
    };
    Ok(r
        .outcomes
        .iter()
        .map(|o| {
            let anchor = if o.variant == "bullet" {
                "the group of flows of the scaled bullet ring gives A/ann(p²)"
            } else {
                ANCHOR
            };
            let c = match (&o.skipped, o.pass) {
                (Some(h), true) => Check::skipped(o.variant, anchor, h.clone()),
                _ if o.pass => Check::pass(o.variant, anchor),
                _ => Check::fail(o.variant, anchor, o.first_mismatch.clone()),
            }
            .with_detail(o);
            if o.primary {
                c
            } else {
                c.informational()
            }
        })
        .collect())
}

fn powerful_adjoint(b: &Brace) -> Result<Vec<Check>> {
    const ANCHOR: &str = "powerful adjoint group with p > n+1 ⇒ strongly nilpotent";
    let g = FiniteGroupTable::adjoint_group(b)?;
    let powerful = g.is_powerful();
    let strong = b.nilpotency_chains().strong_index();
    let detail = json!({
        "adjoint_powerful": powerful,
        "powerful_brace": b.is_powerful_brace(),
        "strong_index": strong,
    });
    let main = if !b.p_exceeds_n_plus_1() {
        Check::skipped("strongly-nilpotent", ANCHOR, "p > n+1")
    } else if !powerful {
        Check::skipped("strongly-nilpotent", ANCHOR, "adjoint group powerful")
    } else {
        Check::from_bool("strongly-nilpotent", ANCHOR, strong.is_some())
    };
    Ok(vec![main.with_detail(detail)])
}

fn bounds(b: &Brace) -> Result<Vec<Check>> {
    let ctx = BoundsContext::new(b)?;
    let reports = b
        .group()
        .elements()
        .map(|a| ctx.check(a))
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = reports.first() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (idx, proto) in first.checks.iter().enumerate() {
        let mut applied = 0usize;
        let mut failure = None;
        let mut hypothesis = None;
        for r in &reports {
            let c = &r.checks[idx];
            match c.skipped {
                Some(h) => {
                    hypothesis.get_or_insert(h);
                }
                None => {
                    applied += 1;
                    if !c.holds && failure.is_none() {
                        failure = Some((r.a, c.clone()));
                    }
                }
            }
        }
        let name = proto.name;
        let check = match (applied, failure) {
            (0, _) => Check::skipped(name, name, hypothesis.unwrap_or("no applicable element")),
            (_, Some((a, c))) => Check::fail(name, name, Some(vec![a])).with_detail(c),
            (_, None) => Check::pass(name, name).with_detail(json!({ "elements": applied })),
        };
        out.push(check);
    }
    Ok(out)
}

fn group_suite(name: &str, g: &FiniteGroupTable) -> Option<Vec<Check>> {
    match name {
        "graded-lie" => Some(graded_lie(g)),
        "coclass" => Some(coclass(g)),
        _ => None,
    }
}

fn graded_lie(g: &FiniteGroupTable) -> Vec<Check> {
    const LIE: &str = "L(G) is a Lie ring";
    let l = match graded_lie_ring(g) {
        Ok(l) => l,
        Err(e) => return vec![Check::from_error("lie-ring", LIE, &e)],
    };
    let p = g.prime();
    let pl = l.lie.group().p_power_multiples(1);
    let mut out = vec![
        Check::pass("lie-ring", LIE).with_detail(json!({
            "components": l.components.iter().map(|c| c.order()).collect::<Vec<_>>(),
        })),
        Check::from_bool("order", "|L(G)| = |G|", l.order() == g.order()),
    ];
    out.push(match lie_subring_of_subgroup(g, &l, &g.power_subgroup(p)) {
        Ok(sub) => {
            let mut c = Check::from_bool("power-subring", "L(G, G^p) ⊆ pL(G)", sub.is_subset_of(&pl));
            if c.status == Status::Fail {
                c.witness = sub.members().iter().find(|&&x| !pl.contains(x)).map(|&x| vec![x]);
            }
            c.with_detail(json!({ "subring_order": sub.len(), "pl_order": pl.len() }))
        }
        Err(e) => Check::from_error("power-subring", "L(G, G^p) ⊆ pL(G)", &e),
    });
    let powerful = g.is_powerful();
    const POWERFUL_LIE: &str = "G powerful ⇒ L(G) powerful";
    out.push(if powerful {
        Check::from_bool("powerful-lie", POWERFUL_LIE, l.lie.is_powerful())
    } else {
        Check::skipped("powerful-lie", POWERFUL_LIE, "G powerful")
    });
    const CHAIN: &str = "L^(i+1) ⊆ p^i L for powerful L";
    out.push(if !powerful {
        Check::skipped("power-chain", CHAIN, "G powerful")
    } else {
        match l.lie.power_chain_violation() {
            Ok(None) => Check::pass("power-chain", CHAIN),
            Ok(Some(i)) => Check::fail("power-chain", CHAIN, Some(vec![i as u32])),
            Err(e) => Check::from_error("power-chain", CHAIN, &e),
        }
    });
    const MEMBER: &str = "(x, y) ∈ G^(p²) for x ∈ G^p, y ∈ G in a powerful group";
    const GAMMA: &str = "(γ_k^(p^i), γ_l^(p^j)) = γ_(k+l)^(p^(i+j)) in a powerful group";
    match g.powerful_commutator_checks() {
        Ok(r) => {
            out.push(Check::from_violation("commutator-membership", MEMBER, r.membership.clone()));
            let first_bad = r.identities.iter().find(|x| !x.included);
            out.push(
                Check::from_bool("gamma-inclusion", GAMMA, first_bad.is_none())
                    .with_detail(json!({ "first_failure": first_bad }))
                    .informational(),
            );
            let first_unequal = r.identities.iter().find(|x| !x.equal);
            out.push(
                Check::from_bool("gamma-equality", GAMMA, first_unequal.is_none())
                    .with_detail(json!({ "first_failure": first_unequal }))
                    .informational(),
            );
        }
        Err(e) => {
            out.push(Check::from_error("commutator-membership", MEMBER, &e));
        }
    }
    const LAZARD: &str = "M_i(G) is a Lie ring for uniform G and 1 ≤ i ≤ e/3";
    if g.is_uniform() {
        let e = g.log_exponent();
        for i in 1..=e / 3 {
            let name = format!("lazard/{i}");
            out.push(match lazard_lie(g, i) {
                Ok(m) => Check::pass(name, LAZARD).with_detail(json!({ "order": m.lie.order() })),
                Err(err) => Check::from_error(name, LAZARD, &err),
            });
        }
    } else {
        out.push(Check::skipped("lazard", LAZARD, "G uniform"));
    }
    out
}

fn coclass(g: &FiniteGroupTable) -> Vec<Check> {
    const ANCHOR: &str = "G powerful ⇒ n ≤ 2b+1, with b = n - c the coclass";
    let r = g.coclass();
    let c = match r.bound_holds {
        Some(ok) => Check::from_bool("bound", ANCHOR, ok),
        None => Check::skipped("bound", ANCHOR, "G powerful"),
    };
    vec![c.with_detail(&r)]
}

fn prelie_suite(name: &str, p: &PreLieRing) -> Option<Vec<Check>> {
    (name == "prelie-nilpotency").then(|| prelie_nilpotency_checks(p))
}

fn prelie_nilpotency_checks(p: &PreLieRing) -> Vec<Check> {
    let axioms = verify_prelie_axioms(p);
    let mut out = axiom_checks("axiom", &axioms);
    if !axioms.passed() {
        return out;
    }
    let chains = prelie_nilpotency(p);
    let summary = chains.summary();
    const LIE: &str = "[a,b] = a·b - b·a is a Lie bracket";
    match associated_lie(p) {
        Ok(_) => out.push(Check::pass("associated-lie", LIE)),
        Err(e) => out.push(Check::from_error("associated-lie", LIE, &e)),
    }
    let powerful = is_powerful_prelie(p);
    const RIGHT: &str = "left nilpotent with powerful Lie ring ⇒ right nilpotent";
    const STRONG: &str = "left nilpotent with powerful Lie ring ⇒ strongly nilpotent";
    let gate = if summary.left_index.is_none() {
        Some("left nilpotent")
    } else if !powerful {
        Some("associated Lie ring powerful")
    } else {
        None
    };
    match gate {
        Some(h) => {
            out.push(Check::skipped("right-nilpotent", RIGHT, h));
            out.push(Check::skipped("strongly-nilpotent", STRONG, h));
        }
        None => {
            out.push(Check::from_bool("right-nilpotent", RIGHT, summary.right_index.is_some()));
            out.push(Check::from_bool("strongly-nilpotent", STRONG, summary.strong_index.is_some()));
        }
    }
    if let Some(last) = out.last_mut() {
        last.detail = Some(json!({ "powerful": powerful, "chains": summary }));
    }
    out
}

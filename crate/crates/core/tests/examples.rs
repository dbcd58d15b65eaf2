//! Every example runs and prints what it claims.

#[allow(dead_code)]
#[path = "../examples/construct_braces.rs"]
mod construct_braces;

#[allow(dead_code)]
#[path = "../examples/prelie_from_brace.rs"]
mod prelie_from_brace;

#[allow(dead_code)]
#[path = "../examples/group_of_flows.rs"]
mod group_of_flows;

#[allow(dead_code)]
#[path = "../examples/graded_lie.rs"]
mod graded_lie;

#[allow(dead_code)]
#[path = "../examples/fixed_point_bounds.rs"]
mod fixed_point_bounds;

#[allow(dead_code)]
#[path = "../examples/verification_suites.rs"]
mod verification_suites;

#[allow(dead_code)]
#[path = "../examples/json_io.rs"]
mod json_io;

#[test]
fn construct_braces_runs() {
    let out = construct_braces::run_example();
    assert_eq!(out.matches("axioms hold").count(), 5);
    assert!(out.contains("1∘1 = 7, λ_1(1) = 6"));
}

#[test]
fn prelie_from_brace_runs() {
    let out = prelie_from_brace::run_example();
    assert!(out.contains("ξ = 2057 (γ = 2)"));
    assert!(!out.contains("cross-check false"));
    assert!(!out.contains("pre-Lie false"));
}

#[test]
fn group_of_flows_runs() {
    let out = group_of_flows::run_example();
    assert!(out.contains("W(Ω(1)) = 1"));
    assert!(out.contains("a∘b = a+b+ab: true"));
    assert!(out.contains("trivial brace: true"));
    assert_eq!(out.matches("pass true; strong ok").count(), 2);
    assert!(out.contains("`p > n+1` violated"));
}

#[test]
fn graded_lie_runs() {
    let out = graded_lie::run_example();
    assert!(out.contains("Z/25 ⋊ Z/5: class 2, powerful true, |L| = 125, L powerful false, L(G,G^p) ⊆ pL false"));
    assert!(out.contains("Heisenberg(5): class 2, powerful false"));
    assert!(out.contains("uniform true"));
}

#[test]
fn fixed_point_bounds_runs() {
    let out = fixed_point_bounds::run_example();
    assert!(out.contains("f ≈ 177.321928 (ceiling 178)"));
    assert!(!out.contains("FAILS"));
}

#[test]
fn verification_suites_runs() {
    let out = verification_suites::run_example();
    assert!(out.ends_with("overall: pass\n"));
    assert!(out.contains("brace-axioms/"));
    assert!(out.contains("graded-lie/"));
}

#[test]
fn json_io_runs() {
    let out = json_io::run_example();
    assert!(out.starts_with("{\"exponents\":[1],\"prime\":5,\"star\":"));
    assert!(out.contains("parses back as a brace"));
    assert!(out.contains("construct exit 0, analyze-group exit 0: class 2, powerful false"));
}

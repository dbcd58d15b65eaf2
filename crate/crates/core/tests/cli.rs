use std::path::{Path, PathBuf};
use std::process::Command;

use braceforge::cli::{run_args, Outcome};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Outcome {
    run_args(args.iter().copied())
}

fn json(o: &Outcome) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs `construct` with the given flags and returns the written file.
fn construct(dir: &TempDir, name: &str, flags: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["construct"];
    args.extend_from_slice(flags);
    args.extend(["--out", arg(&path)]);
    let o = run(&args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    path
}

#[test]
fn construct_trivial_has_125_elements() {
    let o = run(&["construct", "--kind", "trivial", "--p", "5", "--exponents", "3"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["star"].as_array().unwrap().len(), 125);
    assert_eq!(v["exponents"], serde_json::json!([3]));
    assert!(o.stdout.ends_with(b"]]}\n"));
}

#[test]
fn constructed_braces_verify() {
    let dir = TempDir::new().unwrap();
    for (name, flags) in [
        ("rc.json", &["--kind", "radical-cyclic", "--p", "5", "--n", "3"][..]),
        ("tri.json", &["--kind", "radical-triangular", "--p", "5", "--d", "3"][..]),
    ] {
        let path = construct(&dir, name, flags);
        let o = run(&["verify", "--suite", "brace-axioms", "--input", arg(&path)]);
        assert_eq!(o.code, 0);
        assert_eq!(json(&o)["pass"], true);
    }
}

#[test]
fn bullet_on_triangular_passes() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "tri.json", &["--kind", "radical-triangular", "--p", "5", "--d", "3"]);
    let o = run(&["verify", "--suite", "bullet-prelie", "--input", arg(&path)]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn roundtrip_below_hypothesis_is_skipped() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "rc33.json", &["--kind", "radical-cyclic", "--p", "3", "--n", "3"]);
    let o = run(&["verify", "--suite", "roundtrip", "--input", arg(&path)]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "skipped");
        assert_eq!(c["hypothesis"], "p > n+1");
        assert!(c["anchor"].as_str().is_some_and(|s| !s.is_empty()));
    }
}

#[test]
fn bullet_transform_has_order_5() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "rc.json", &["--kind", "radical-cyclic", "--p", "5", "--n", "3"]);
    let o = run(&["transform", "--which", "bullet", "--input", arg(&path)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["dot"].as_array().unwrap().len(), 5);
    assert_eq!(v["provenance"]["construction"], "bullet");
    assert_eq!(v["provenance"]["gamma"], 2);
    assert_eq!(v["provenance"]["source_brace"].as_str().unwrap().len(), 64);
}

#[test]
fn transform_hypothesis_violation_exits_1() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "rc33.json", &["--kind", "radical-cyclic", "--p", "3", "--n", "3"]);
    let o = run(&["transform", "--which", "dot-pa", "--input", arg(&path)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("p > n+1"), "{}", o.stderr);
}

#[test]
fn flows_of_zero_ring_is_trivial() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "zero.json", &["--kind", "prelie-zero", "--p", "5", "--exponents", "2,1"]);
    let o = run(&["flows", "--input", arg(&path)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    let star = v["star"].as_array().unwrap();
    assert_eq!(star.len(), 125);
    assert!(star.iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 0));
    assert_eq!(v["provenance"]["construction"], "group-of-flows");
}

#[test]
fn scaled_strong_dot_flows_back() {
    let dir = TempDir::new().unwrap();
    let b = construct(&dir, "b.json", &["--kind", "radical-triangular", "--p", "5", "--d", "3"]);
    let ring = dir.path().join("ring.json");
    let o = run(&["transform", "--which", "strong-dot", "--scaled", "--input", arg(&b), "--out", arg(&ring)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = run(&["flows", "--input", arg(&ring), "--compare", arg(&b)]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["pass"], true);

    // the unscaled product does not reproduce the brace
    let o = run(&["transform", "--which", "strong-dot", "--input", arg(&b), "--out", arg(&ring)]);
    assert_eq!(o.code, 0);
    let o = run(&["flows", "--input", arg(&ring), "--compare", arg(&b)]);
    assert_eq!(o.code, 1);
    assert!(json(&o)["first_mismatch"].is_array());
}

#[test]
fn analyze_heisenberg() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "h.json", &["--kind", "heisenberg", "--p", "5"]);
    let o = run(&["analyze-group", "--input", arg(&path)]);
    assert_eq!(o.code, 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["summary"]["class"], 2);
    assert_eq!(v["summary"]["powerful"], false);
    assert_eq!(v["summary"]["order"], 125);
}

#[test]
fn analyze_reports_powerful_counterexample() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, "m.json", &["--kind", "metacyclic", "--p", "5", "--m", "2", "--k", "1", "--r", "6"]);
    let o = run(&["analyze-group", "--input", arg(&path)]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    assert_eq!(v["summary"]["powerful"], true);
    let failed: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail" && c.get("informational").is_none())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"graded-lie/power-subring"), "{failed:?}");
}

#[test]
fn bounds_command() {
    let o = run(&["bounds", "--p", "5", "--k", "1", "--m", "1"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["f"]["ceiling"], "178");
    assert!((v["f"]["value"].as_f64().unwrap() - 177.321928).abs() < 1e-6);
    assert_eq!(v["d_bound"], "5");
    assert_eq!(v["h_upper_value"], "1073741824/3");
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["verify", "--suite", "all"]).code, 2);
    assert_eq!(run(&["construct", "--kind", "radical-cyclic", "--p", "5"]).code, 2);
    assert_eq!(run(&["construct", "--kind", "trivial", "--p", "4", "--exponents", "1"]).code, 2);
    assert_eq!(run(&["bounds", "--p", "6", "--k", "1", "--m", "1"]).code, 2);
    assert_eq!(run(&["--parallel", "0", "bounds", "--p", "5", "--k", "1", "--m", "1"]).code, 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["verify", "--suite", "all", "--input", arg(&missing)]).code, 2);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(run(&["verify", "--suite", "all", "--input", arg(&garbage)]).code, 2);

    let short = dir.path().join("short.json");
    std::fs::write(&short, r#"{"prime":5,"exponents":[1],"star":[[0,0,0,0,0]]}"#).unwrap();
    assert_eq!(run(&["verify", "--suite", "brace-axioms", "--input", arg(&short)]).code, 2);

    let rc = construct(&dir, "rc.json", &["--kind", "radical-cyclic", "--p", "5", "--n", "2"]);
    assert_eq!(run(&["verify", "--suite", "no-such-suite", "--input", arg(&rc)]).code, 2);
    assert_eq!(run(&["verify", "--suite", "prelie-nilpotency", "--input", arg(&rc)]).code, 2);
    assert_eq!(run(&["flows", "--input", arg(&rc)]).code, 2);
}

#[test]
fn axiom_violation_exits_1_with_witness() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    // a*b = 1 when a = b = 1, else 0: not additive in b
    let mut star = vec![vec![0u32; 5]; 5];
    star[1][1] = 1;
    let v = serde_json::json!({"prime": 5, "exponents": [1], "star": star});
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["verify", "--suite", "brace-axioms", "--input", arg(&bad)]);
    assert_eq!(o.code, 1);
    let r = json(&o);
    assert_eq!(r["pass"], false);
    let failed = r["checks"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert!(!failed["witness"].as_array().unwrap().is_empty());
}

#[test]
fn report_written_to_file() {
    let dir = TempDir::new().unwrap();
    let b = construct(&dir, "b.json", &["--kind", "trivial", "--p", "5", "--exponents", "1,1"]);
    let report = dir.path().join("r.json");
    let o = run(&["verify", "--suite", "all", "--input", arg(&b), "--report", arg(&report)]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["suite"], "all");
    assert_eq!(v["target"]["kind"], "brace");
    assert!(v.get("timing_ms").is_none());

    let o = run(&["--timing", "verify", "--suite", "xi-unit", "--input", arg(&b)]);
    assert!(json(&o)["timing_ms"].is_u64());
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_braceforge");
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.json");
    let status = |args: &[&str]| Command::new(exe).args(args).output().unwrap();

    let o = status(&["construct", "--kind", "trivial", "--p", "5", "--exponents", "1", "--out", arg(&path)]);
    assert_eq!(o.status.code(), Some(0));
    let o = status(&["verify", "--suite", "brace-axioms", "--input", arg(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, run(&["verify", "--suite", "brace-axioms", "--input", arg(&path)]).stdout);
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

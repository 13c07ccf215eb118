use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn diffcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scenario(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "scenarios", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json_rows(out: &Output) -> Vec<Value> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn column(rows: &[Value], key: &str) -> Vec<Value> {
    rows.iter().map(|r| r[key].clone()).collect()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("errors are json")
}

#[test]
fn examples_match_their_golden_output() {
    for name in [
        "cyclic-trivial",
        "frobenius-twisted",
        "additive-group",
        "induced-cyclic4",
    ] {
        let golden =
            std::fs::read_to_string(format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let out = diffcoh(&["--format", "json", "examples", name]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden, "{name}");
    }
}

#[test]
fn example_aliases_resolve() {
    let by_name = diffcoh(&["--format", "json", "examples", "cyclic-trivial"]);
    let by_alias = diffcoh(&["--format", "json", "examples", "ex3_6_1"]);
    assert_eq!(by_name.stdout, by_alias.stdout);
    let listing = stdout(&diffcoh(&["examples"]));
    assert!(listing.contains("induced-cyclic4 (alias thm38_z4)"));
}

#[test]
fn unknown_example_is_invalid_input() {
    let out = diffcoh(&["examples", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "scenario");
}

#[test]
fn cyclic_example_with_other_parameters_keeps_its_closed_form() {
    // t = 2 has order 4 modulo 5, so degrees 2 to 6 vanish.
    let rows = json_rows(&diffcoh(&[
        "--format",
        "json",
        "examples",
        "cyclic-trivial",
        "--p",
        "5",
        "--t",
        "2",
        "--jmax",
        "5",
    ]));
    assert_eq!(column(&rows, "dim"), column(&rows, "closed_form"));
    let dims: Vec<u64> = rows.iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1, 0, 0, 0, 0]);
}

#[test]
fn oversized_problems_are_refused() {
    let out = diffcoh(&["examples", "cyclic-trivial", "--p", "5", "--t", "2", "--jmax", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("lower jmax"));
}

#[test]
fn unipotent_module_over_cyclic_group() {
    let rows = json_rows(&diffcoh(&[
        "--format",
        "json",
        "run",
        "--scenario",
        &scenario("cyclic3-unipotent.json"),
    ]));
    let dims: Vec<u64> = rows.iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    // The Jordan block has one-dimensional cohomology in every degree and sigma acts trivially.
    assert_eq!(dims, [1, 2, 2, 2, 2]);
    assert!(rows.iter().all(|r| r["method"] == "both"));
}

#[test]
fn routes_can_be_run_separately() {
    let path = scenario("s3-trivial-f9.json");
    let ses = json_rows(&diffcoh(&[
        "--format",
        "json",
        "diffcoh",
        "--scenario",
        &path,
        "--method",
        "ses",
    ]));
    let cone = json_rows(&diffcoh(&[
        "--format",
        "json",
        "diffcoh",
        "--scenario",
        &path,
        "--method",
        "cone",
    ]));
    assert_eq!(column(&ses, "dim"), column(&cone, "dim"));
    assert!(ses.iter().all(|r| r["method"] == "ses" && r["inv"].is_u64()));
    assert!(cone.iter().all(|r| r["method"] == "cone" && r["inv"].is_null()));
}

#[test]
fn empty_rho_is_the_trivial_action() {
    let path = scenario("s3-trivial-f9.json");
    assert!(diffcoh(&["validate", "--scenario", &path]).status.success());
    let rows = json_rows(&diffcoh(&[
        "--format",
        "json",
        "cohomology",
        "--scenario",
        &path,
        "--jmax",
        "4",
    ]));
    // H^*(S_3, F_3) lives in degrees 0, 3, 4 (mod 4); each F_9-line is 2-dimensional over F_3.
    let dims: Vec<u64> = rows.iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 0, 0, 2, 2]);
}

#[test]
fn induced_stable_alias_and_task() {
    let path = scenario("cyclic4-rotation.json");
    let a = diffcoh(&["--format", "json", "induced-stable", "--scenario", &path]);
    let b = diffcoh(&["--format", "json", "thm38", "--scenario", &path]);
    let c = diffcoh(&["--format", "json", "run", "--scenario", &path]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let rows = json_rows(&a);
    assert!(rows.iter().all(|r| r["agree"] == true && r["shift_invariants"] == 0));
}

#[test]
fn stable_cohomology_of_nilpotent_endomorphism() {
    let rows = json_rows(&diffcoh(&[
        "--format",
        "json",
        "stable",
        "--scenario",
        &scenario("cyclic4-rotation.json"),
        "--jmax",
        "3",
    ]));
    let dims: Vec<u64> = rows.iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 0, 0, 0]);
}

#[test]
fn graded_module() {
    let rows = json_rows(&diffcoh(&[
        "--format",
        "json",
        "gm",
        "--scenario",
        &scenario("graded.json"),
    ]));
    assert_eq!(column(&rows, "dim"), [Value::from(1), Value::from(1)]);
}

#[test]
fn non_homomorphism_reports_the_failing_pair() {
    let out = diffcoh(&["run", "--scenario", &scenario("not-a-homomorphism.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "validation");
    assert!(err["g"].is_u64() && err["h"].is_u64());
    assert!(out.stdout.is_empty());
}

#[test]
fn incompatible_sigma_is_rejected_by_both_routes() {
    let path = scenario("incompatible-sigma.json");
    let out = diffcoh(&["run", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].as_str().unwrap().contains("incompatible"));
    let out = diffcoh(&["diffcoh", "--method", "cone", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["degree"], 0);
}

#[test]
fn malformed_scenarios_are_invalid_input() {
    let dir = std::env::temp_dir().join(format!("diffcoh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("syntax.json", "{ not json", "parse"),
        (
            "unknown-key.json",
            r#"{"group":{"type":"cyclic","m":3,"t":2},"colour":1}"#,
            "parse",
        ),
        (
            "bad-field.json",
            r#"{"field":{"p":4},"group":{"type":"cyclic","m":3,"t":2}}"#,
            "scenario",
        ),
        (
            "bad-shape.json",
            r#"{"group":{"type":"cyclic","m":3,"t":2},"module":{"dim":2,"rho":{"1":[[1]]}}}"#,
            "scenario",
        ),
    ];
    for (name, text, kind) in cases {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        let out = diffcoh(&["run", "--scenario", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert_eq!(stderr_json(&out)["error"], kind, "{name}");
    }
    let out = diffcoh(&["run", "--scenario", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "io");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_formats() {
    let path = scenario("cyclic3-unipotent.json");
    let csv = stdout(&diffcoh(&["--format", "csv", "run", "--scenario", &path]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("degree,dim,inv,coinv,method"));
    assert_eq!(lines.next(), Some("0,1,1,0,both"));
    let text = stdout(&diffcoh(&["run", "--scenario", &path]));
    assert!(text.contains("oracle agreement: yes"));
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["4", "2", "1", "1", "2", "both"]));
    let ga = stdout(&diffcoh(&["--format", "csv", "ga-example"]));
    assert!(ga.contains("3,inf,,,shift-orbits"));
}

#[test]
fn additive_group_rejects_small_truncation() {
    let out = diffcoh(&["ga-example", "--trunc", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic_and_passes() {
    let a = diffcoh(&["selftest", "--seed", "7"]);
    let b = Command::new(env!("CARGO_BIN_EXE_diffcoh"))
        .args(["selftest", "--seed", "7"])
        .env("DIFFCOH_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    assert!(text.ends_with("selftest passed\n"));
}

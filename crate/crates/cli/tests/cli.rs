use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dkv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkv")).args(args).output().expect("run dkv")
}

fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("valid schema");
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
    v
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dkv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn solved(name: &str, degree: usize, even: bool) -> PathBuf {
    let p = tmp(name);
    let d = degree.to_string();
    let mut args = vec!["solve", "--degree", &d, "--out", p.to_str().unwrap()];
    if even {
        args.push("--even");
    }
    let out = dkv(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn check<'a>(v: &'a Value, id: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

fn zeta_rows(v: &Value) -> Vec<(u64, String)> {
    v["result"]["zeta"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["zeta"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn degree_two_has_single_bracket_term() {
    let p = solved("deg2.json", 2, false);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["cap"], 2);
    assert_eq!(v["basis"], "lyndon");
    assert_eq!(v["terms"], serde_json::json!([[[1, 2], "1/24"]]));
}

#[test]
fn degree_four_report_lists_zeta_values() {
    let p = tmp("deg4-report.json");
    let out = dkv(&["solve", "--degree", "4", "--even", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["command"], "solve");
    assert_eq!(v["cap"], 4);
    assert_eq!(zeta_rows(&v), vec![(2, "-1/24".into()), (4, "1/1440".into())]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("zeta(2) = -1/24") && stderr.contains("zeta(4) = 1/1440"));
}

#[test]
fn solve_is_byte_identical() {
    let a = std::fs::read(solved("twice-a.json", 2, false)).unwrap();
    let b = std::fs::read(solved("twice-b.json", 2, false)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solve_rejects_degree_one() {
    let out = dkv(&["solve", "--degree", "1", "--out", tmp("deg1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kv_suite_passes_on_solved_associator() {
    let p = solved("kv.json", 5, true);
    let out = dkv(&["verify", "--suite", "kv", "--associator", p.to_str().unwrap(), "--seed", "1"]);
    let v = report(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["seed"], 1);
    assert_eq!(check(&v, "kv.identity2")["status"], "pass");
    assert_eq!(check(&v, "kv.symmetry.minus_quarter")["status"], "known_fail");
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn corrupted_associator_fails_identity2() {
    let p = solved("corrupt-src.json", 5, true);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    v["terms"].as_array_mut().unwrap().push(serde_json::json!([[1, 1, 2], "1/3"]));
    v["even"] = Value::Bool(false);
    let bad = tmp("corrupt.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = dkv(&["verify", "--suite", "kv", "--associator", bad.to_str().unwrap(), "--degree", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let c = check(&r, "kv.identity2");
    assert_eq!(c["status"], "fail");
    assert_eq!(c["first_failure_degree"], 3);
}

#[test]
fn seeded_reports_are_deterministic() {
    let run = |seed: &str| {
        let out = dkv(&["verify", "--suite", "cocycle", "--degree", "4", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
        let mut v = report(&out);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    assert_eq!(run("17"), run("17"));
}

#[test]
fn degree_above_file_cap_is_a_usage_error() {
    let p = solved("small.json", 3, false);
    let out = dkv(&["verify", "--suite", "kv", "--associator", p.to_str().unwrap(), "--degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_files_are_usage_errors() {
    let missing = tmp("missing.json");
    assert_eq!(dkv(&["gamma", "--associator", missing.to_str().unwrap()]).status.code(), Some(2));
    let garbage = tmp("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(dkv(&["gamma", "--associator", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(dkv(&["verify", "--suite", "kv"]).status.code(), Some(2));
    assert_eq!(dkv(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn gamma_table_matches_bernoulli_values() {
    let p = solved("gamma.json", 4, true);
    let out = dkv(&["gamma", "--associator", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(zeta_rows(&v), vec![(2, "-1/24".into()), (4, "1/1440".into())]);
    assert_eq!(check(&v, "gamma.bernoulli")["status"], "pass");
}

#[test]
fn braid_ad_on_x12() {
    let out = dkv(&["braid", "--action", "ad", "--word", "strands: 3\nx12", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    let images: Vec<&str> = v["result"]["images"].as_array().unwrap().iter().map(|i| i["image"].as_str().unwrap()).collect();
    assert_eq!(images, vec!["X1", "X1 X2 X1^-1"]);
    assert_eq!(v["result"]["taut"]["cap"], 3);
}

#[test]
fn braid_cable_x12_with_multiplicities() {
    let out = dkv(&["braid", "--action", "cable", "--word", "x12", "--strands", "2", "--mult", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["cabled"], "strands: 3\nx12 x13");
}

#[test]
fn braid_artin_action() {
    let out = dkv(&["braid", "--action", "artin", "--word", "strands: 3\ns1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["images"].as_array().unwrap().len(), 3);
}

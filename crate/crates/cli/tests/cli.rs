use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pgcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgcode")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn lookup(list: &Value, key: &str, i: u64) -> i64 {
    list.as_array()
        .unwrap()
        .iter()
        .find(|e| e[key] == i)
        .map(|e| e["value"].as_i64().unwrap())
        .unwrap()
}

#[test]
fn geom_info_tables() {
    let out = pgcode(&["geom-info", "--n", "3", "--p", "2", "--h", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(lookup(&r["bounds"]["W"], "i", 3), 12483);
    assert_eq!(lookup(&r["theta"], "m", 2), 4161);
    assert_eq!(r["regime_flags"], serde_json::json!([]));
    assert_eq!(r["version"], pg_incidence::VERSION);

    let r = json(&pgcode(&["geom-info", "--n", "2", "--p", "5", "--h", "3"]));
    assert_eq!(lookup(&r["bounds"]["W"], "i", 2), 10 * 126);

    let out = pgcode(&["geom-info", "--n", "2", "--p", "5", "--h", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert!(r["bounds"].is_null());
    assert!(r["bounds_error"].as_str().unwrap().contains("h >= 2"));

    assert_eq!(pgcode(&["geom-info", "--n", "2", "--p", "6", "--h", "1"]).status.code(), Some(1));
}

#[test]
fn analyze_szonyi_fixture_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "s.json", r#"{"n":2,"p":5,"h":3,"fixture":"szonyi"}"#);
    let out = pgcode(&["analyze", &spec, "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&out)["minimality"].clone();
    assert_eq!(m["verdict"], "Undetermined");
    assert_eq!(m["resolved_verdict"], "Minimal");
    assert_eq!(m["resolved_by"], "oracle");
    assert_eq!(m["oracle"]["combinations_checked"], 78125);
    assert_eq!(m["fixpoint"].as_array().unwrap().len(), 3);
    assert_eq!(m["exceptional_holes"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_difference_in_pg3_64() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "d.json",
        r#"{"n":3,"p":2,"h":6,"terms":[{"hyperplane":11,"coefficient":1},{"dual":[1,2,3,4],"coefficient":-1}]}"#,
    );
    let out = pgcode(&["analyze", &spec, "--decompose"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["weight"], 8192);
    assert_eq!(r["decomposition"]["matches_input"], true);
    assert_eq!(r["decomposition"]["expected_terms"], 2);
    assert!(r.get("minimality").is_none());
}

#[test]
fn analyze_zero_codeword_and_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "z.json", r#"{"n":2,"p":2,"h":5,"terms":[]}"#);
    let r = json(&pgcode(&["analyze", &spec, "--minimality", "--spectrum"]));
    assert_eq!(r["weight"], 0);
    assert_eq!(r["minimality"]["verdict"], "Minimal");
    assert_eq!(r["minimality"]["notes"], serde_json::json!(["degenerate-zero"]));
    assert_eq!(r["spectrum"]["histogram"], serde_json::json!([[0, 1057]]));
}

#[test]
fn out_of_regime_exit_code_is_configurable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "n.json", r#"{"n":2,"p":2,"h":5,"fixture":"no-hole-line"}"#);
    let out = pgcode(&["analyze", &spec, "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["regime_flags"], serde_json::json!(["weight-above-bound"]));
    assert_eq!(r["minimality"]["verdict"], "NotMinimal");
    assert_eq!(r["minimality"]["oracle"]["heuristic"], true);
    assert_eq!(pgcode(&["analyze", &spec, "--allow-out-of-regime"]).status.code(), Some(0));
}

#[test]
fn errors_exit_one_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "b.json", "{\n \"n\": 2,\n \"p\": }");
    let out = pgcode(&["analyze", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let spec = write(dir.path(), "z.json", r#"{"n":2,"p":2,"h":5,"terms":[]}"#);
    let out = pgcode(&["--cap-lines", "100", "analyze", &spec, "--spectrum"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let out = pgcode(&["--cap-points", "100", "analyze", &spec]);
    assert_eq!(out.status.code(), Some(1));
    let big = write(dir.path(), "o.json", r#"{"n":2,"p":5,"h":3,"fixture":"szonyi"}"#);
    let out = pgcode(&["--cap-oracle", "1000", "analyze", &big, "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["minimality"]["notes"].as_array().unwrap().iter().filter(|n| *n == "oracle-cap-exceeded").count(), 1);
}

#[test]
fn reports_are_deterministic_and_hashed() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "r.json", r#"{"n":2,"p":5,"h":3,"fixture":"random-j","j":6,"seed":3}"#);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (out, threads) in [(&a, "1"), (&b, "2")] {
        let o = pgcode(&["--threads", threads, "analyze", &spec, "--spectrum", "--oracle", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let r: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(r["spec_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["input"]["terms"]["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn fixture_output_feeds_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = pgcode(&["fixture", "pencil", "--q", "32", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&pgcode(&["analyze", path.to_str().unwrap(), "--oracle"]));
    assert_eq!(r["weight"], 97);
    assert_eq!(r["minimality"]["verdict"], "NotMinimal");
    assert_eq!(r["minimality"]["oracle"]["minimal"], false);
    assert!(r["minimality"]["witness"].is_object());
    assert_eq!(pgcode(&["fixture", "szonyi", "--q", "27"]).status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    let out = pgcode(&["verify", "bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("3 passed, 0 failed"), "{text}");

    let out = pgcode(&["verify", "secants", "--q", "32", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pgcode(&["verify", "roundtrip", "--q", "125", "--n", "2", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("20/20 exact recoveries"));
    let out = pgcode(&["verify", "minimality", "--trials", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    // a context outside the regime fails the round-trip check cleanly
    let out = pgcode(&["verify", "roundtrip", "--q", "27", "--n", "2", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn experiment_runs() {
    let r = json(&pgcode(&["experiment", "--q", "125", "--trials", "10", "--seed", "5"]));
    let total: u64 = r["rows"].as_array().unwrap().iter().map(|row| row["samples"].as_u64().unwrap()).sum();
    assert_eq!(total, 10);
}

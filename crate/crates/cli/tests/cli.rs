use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use circlemm::multimatroid::{fundamental_graph, BinaryMatroidRep};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circlemm")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json", "--no-timing"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().expect("exit code"))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn recognize_exit_codes() {
    let w5 = fixture("w5.graph");
    let (v, code) = json(&["recognize", path(&w5), "--obstruction"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdicts"]["circle"], false);
    assert_eq!(v["verdicts"]["obstruction"]["name"], "W5");
    assert!(v["verdicts"]["certificate"]["combination"].as_array().is_some_and(|c| !c.is_empty()));

    let ex = fixture("example.graph");
    let (v, code) = json(&["recognize", path(&ex), "--realize"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["circle"], true);
    assert_eq!(v["verdicts"]["naji_solution"].as_array().unwrap().len(), 12);
    assert_eq!(v["verdicts"]["realization"].as_array().unwrap().len(), 1);

    let out = run(&["recognize", path(&fixture("bad.graph"))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["recognize"]).status.code(), Some(3));
}

#[test]
fn budget_limited_search_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k33.graph");
    std::fs::write(&g, fundamental_graph(&BinaryMatroidRep::k33()).to_text()).unwrap();
    let (v, code) = json(&["recognize", path(&g), "--obstruction", "--budget", "5"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdicts"]["circle"], false);
    assert_eq!(v["verdicts"]["obstruction_search_complete"], false);
    let (v, code) = json(&["recognize", path(&g), "--obstruction"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdicts"]["obstruction"]["name"], "W5");
}

#[test]
fn signed_ias_for_both_bases() {
    let dow = fixture("example.dow");
    let (v, code) = json(&["signed-ias", path(&dow), "--base", "ad"]);
    assert_eq!(code, 0);
    let m = &v["matrices"][0];
    assert_eq!(m["row_labels"], serde_json::json!(["a", "b", "c", "d"]));
    assert_eq!(m["col_labels"][4], "chi(a)");
    assert_eq!(m["rows"][0], serde_json::json!(["1", "0", "0", "0", "0", "0", "-1", "-1", "1", "2", "1", "1"]));
    assert_eq!(v["verdicts"]["unimodularity"]["unimodular"], true);
    assert_eq!(v["verdicts"]["unimodularity"]["transversals"], 81);
    assert_eq!(v["verdicts"]["three_circuits"].as_array().unwrap().len(), 12);

    let (v, _) = json(&["signed-ias", path(&dow), "--base", "cd"]);
    assert_eq!(v["matrices"][0]["rows"][3], serde_json::json!(["0", "0", "0", "1", "-1", "-1", "-1", "0", "1", "1", "1", "1"]));
    let profile = v["verdicts"]["three_circuit_profile"].as_object().unwrap();
    assert!(profile.values().all(|k| k.as_u64().unwrap() % 2 == 0));

    let (v, _) = json(&["signed-ias", path(&dow), "--field", "gf3"]);
    assert_eq!(v["verdicts"]["shelters"]["report"]["verdict"], true);
    assert_eq!(v["matrices"][1]["field"], "gf3");

    let (v, code) = json(&["signed-ias", path(&dow), "--unbased", "--require-unimodular"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["based"], false);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);

    let out = run(&["signed-ias", path(&dow), "--base", "ax"]);
    assert_eq!(out.status.code(), Some(3));
    let (v, code) = json(&["signed-ias", path(&dow), "--base", "ab"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["unimodularity"]["unimodular"], true);
}

#[test]
fn worked_example_self_checks() {
    let (v, code) = json(&["paper-example"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["all_pass"], true);
    assert_eq!(v["verdicts"]["fixture_diff"], serde_json::json!([]));
    let n = v["verdicts"]["checks"].as_array().unwrap().len();
    let (v, code) = json(&["paper-example", "--field", "gf5"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["checks"].as_array().unwrap().len(), n + 2);
}

#[test]
fn multimatroid_subcommands() {
    let (v, _) = json(&["multimatroid", "planar", path(&fixture("k5.rep"))]);
    assert_eq!(v["verdicts"]["planar"], false);
    let (v, _) = json(&["multimatroid", "planar", path(&fixture("k4.rep"))]);
    assert_eq!(v["verdicts"]["planar"], true);

    let (v, _) = json(&["multimatroid", "classify", path(&fixture("s1.json"))]);
    assert_eq!(v["verdicts"]["binary_refutation"], true);
    assert_eq!(v["verdicts"]["classification"], "multimatroid");

    let (v, _) = json(&["multimatroid", "z3", path(&fixture("k4.rep")), "--naji"]);
    assert_eq!(v["verdicts"]["regular"], true);
    assert_eq!(v["verdicts"]["classification"], "tight_multimatroid");

    let (v, _) = json(&["multimatroid", "h33"]);
    assert_eq!(v["verdicts"]["classification"], "tight_multimatroid");
    let (v, _) = json(&["multimatroid", "s1"]);
    assert_eq!(v["verdicts"]["h33_transversals_leaving_s1"], 18);

    let dir = tempfile::tempdir().unwrap();
    let k6 = dir.path().join("k6.rep");
    std::fs::write(&k6, BinaryMatroidRep::graphic(6, &k6_edges()).unwrap().to_text()).unwrap();
    let out = run(&["multimatroid", "z3", path(&k6)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}

fn k6_edges() -> Vec<(usize, usize)> {
    (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect()
}

#[test]
fn reports_are_reproducible() {
    let dow = fixture("example.dow");
    for args in [
        vec!["--json", "--no-timing", "signed-ias", path(&dow)],
        vec!["--json", "--no-timing", "recognize", "--obstruction", "--realize", path(&fixture("w5.graph"))],
        vec!["--json", "--no-timing", "multimatroid", "z2", path(&fixture("fano.rep"))],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout);
        assert!(!String::from_utf8_lossy(&a.stdout).contains("timings_ms"));
    }
    let out = run(&["--json", "paper-example"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["timings_ms"].is_object());
    assert_eq!(v["schema"], 1);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

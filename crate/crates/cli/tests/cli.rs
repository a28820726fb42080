//! End-to-end runs of the binary: exit codes, JSON envelopes, figures,
//! golden tables and configuration.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler-esa"))
        .args(args)
        .env_remove("EULER_ESA_CONFIG")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn decide_exit_codes() {
    assert_eq!(code(&run(&["decide", "--m", "2", "--n", "4", "--c", "36"])), 0);
    assert_eq!(code(&run(&["decide", "--m", "2", "--n", "4", "--c", "35"])), 10);
    assert_eq!(code(&run(&["decide", "--m", "2", "--n", "4", "--c", "-1/3"])), 10);
    assert_eq!(code(&run(&["decide", "--m", "0", "--n", "4", "--c", "1"])), 2);
    assert_eq!(code(&run(&["decide", "--m", "2", "--n", "4", "--c", "abc"])), 2);
    assert_eq!(code(&run(&["decide", "--m", "2"])), 2);
}

#[test]
fn decide_text_reports_counts() {
    let out = stdout(&run(&["decide", "--m", "2", "--n", "4", "--c", "36"]));
    assert!(out.starts_with("ESA for (m, n, l, c) = (2, 4, 0, 36)"));
    assert!(out.contains("on Re = -1/2: 2"));
}

#[test]
fn decide_json_envelope() {
    let (rc, j) = json(&["decide", "--m", "5", "--n", "20", "--c", "15000000000"]);
    assert_eq!(rc, 10);
    assert_eq!(j["command"], "decide");
    assert_eq!(j["input"]["c"], "15000000000");
    assert_eq!(j["result"]["verdict"], "NotESA");
    let count = &j["result"]["count"];
    assert_eq!((count["left"].as_u64(), count["axis"].as_u64(), count["right"].as_u64()), (Some(3), Some(0), Some(7)));
    assert_eq!(j["certification"]["exact"], true);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "region", "--m", "3", "--n", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn region_renderings() {
    let out = stdout(&run(&["region", "--m", "5", "--n", "20", "--l", "0"]));
    assert_eq!(out.trim(), "[0, 1.0436e10] ∪ [1.8324e10, ∞)");
    let out = stdout(&run(&["region", "--m", "2", "--n", "4", "--all-l", "--lmax", "10"]));
    assert_eq!(out.trim(), "[36, ∞)");
    assert_eq!(code(&run(&["region", "--m", "2", "--n", "4", "--l", "1", "--all-l"])), 2);
}

#[test]
fn tables_match_embedded_references() {
    for which in ["gamma2", "signs520"] {
        let o = run(&["table", "--which", which]);
        assert_eq!(code(&o), 0, "{which}");
        assert!(stdout(&o).contains("matches reference"));
    }
}

#[test]
fn tampered_golden_file_is_a_mismatch() {
    let dir = tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let bad = dir.path().join("bad.txt");
    fs::write(&good, "# reference\n48 45 36 21 15 231/16 0 -585/16 -105 -3465/16 -384\n").unwrap();
    fs::write(&bad, "48 45 36 21 15 231/16 0 -585/16 -105 -3465/16 -383\n").unwrap();
    assert_eq!(code(&run(&["table", "--which", "gamma2", "--golden", good.to_str().unwrap()])), 0);
    let o = run(&["table", "--which", "gamma2", "--golden", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 20);
}

fn csv_rows(path: &Path) -> (Vec<String>, usize) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    (header, r.records().collect::<Result<Vec<_>, _>>().unwrap().len())
}

#[test]
fn figures_are_written() {
    let dir = tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["figure", "--which", "fig1", "--c1", "0", "--out", out, "--samples", "6"])), 0);
    assert_eq!(code(&run(&["figure", "--which", "fig2", "--out", out, "--samples", "6"])), 0);
    let args = ["figure", "--which", "fig3", "--out", out, "--samples", "4", "--from", "0", "--to", "1e10"];
    assert_eq!(code(&run(&args)), 0);
    let (h1, n1) = csv_rows(&dir.path().join("fig1.csv"));
    assert_eq!(h1[..2], ["c", "j"]);
    // samples intervals, endpoints included, four roots each
    assert_eq!(n1, 7 * 4);
    let (h2, n2) = csv_rows(&dir.path().join("fig2.csv"));
    assert_eq!(h2, ["locus", "k", "c1", "c2", "esa"]);
    assert!(n2 > 0);
    let (h3, n3) = csv_rows(&dir.path().join("fig3.csv"));
    assert!(h3.contains(&"l".to_string()) && h3.contains(&"highlight".to_string()));
    assert!(n3 > 0);
}

#[test]
fn basis_classification() {
    let (rc, j) = json(&["basis", "--c1", "0", "--c2", "1"]);
    assert_eq!(rc, 0);
    assert_eq!(j["result"]["case_tag"], "A3b_lower");
    let (_, j) = json(&["basis", "--c1", "1/3", "--c2", "7/5", "--lambda", "1+2i"]);
    assert_eq!(j["result"]["case_tag"], "Generic");
    assert_eq!(code(&run(&["basis", "--c1", "0", "--c2", "1", "--lambda", "x"])), 2);
}

#[test]
fn config_file_and_environment() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "l_max = 3\n").unwrap();
    let (_, j) = json(&["--config", cfg.to_str().unwrap(), "region", "--m", "2", "--n", "4", "--all-l"]);
    assert_eq!(j["certification"]["l_max"], 3);

    let o = Command::new(env!("CARGO_BIN_EXE_euler-esa"))
        .args(["--json", "region", "--m", "2", "--n", "4", "--all-l"])
        .env("EULER_ESA_CONFIG", &cfg)
        .output()
        .unwrap();
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["certification"]["l_max"], 3);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "l_max = \"x\"\n").unwrap();
    assert_eq!(code(&run(&["--config", bad.to_str().unwrap(), "decide", "--m", "1", "--n", "3", "--c", "0"])), 2);
}

#[test]
fn conjecture_rows() {
    let (rc, j) = json(&["conjecture", "--m-max", "3"]);
    assert_eq!(rc, 0);
    assert_eq!(j["result"]["exploratory"], true);
    assert_eq!(j["result"]["rows"].as_array().unwrap().len(), 3);
}

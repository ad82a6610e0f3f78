use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph1lap")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exact(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

fn edge_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn oracle_on_p10() {
    let r = json(&["--family", "path:10", "--mode", "oracle"]);
    assert_eq!(r["mode"], "oracle");
    assert_eq!(r["graph"]["n"], 10);
    let v = &r["results"]["values"];
    assert_eq!(exact(&v["h2"]), (1, 9));
    assert_eq!(exact(&v["h3"]), (1, 4));
    assert_eq!(exact(&v["rho2"]), (1, 9));
    assert_eq!(exact(&v["rho3"]), (1, 4));
    let k2 = json(&["--family", "path:10", "--mode", "oracle", "--k", "2"]);
    assert!(k2["results"]["values"].get("h3").is_none());
}

#[test]
fn clustering_matches_oracle() {
    for (fam, h2, h3) in [("path:10", (1, 9), (1, 4)), ("cycle:10", (1, 5), (1, 3)), ("path:4", (1, 3), (1, 1))] {
        let r = json(&["--family", fam, "--mode", "cluster3", "--seed", "7"]);
        let v = &r["results"]["values"];
        assert_eq!(exact(&v["ncc2"]), h2, "{fam}");
        assert_eq!(exact(&v["ncc3"]), h3, "{fam}");
        let parts = r["results"]["partitions"]["ncc3"].as_array().unwrap();
        assert_eq!(parts.len(), 3);
    }
}

#[test]
fn input_file_and_formats() {
    let f = edge_file("# P4\n1 2\n2 3\n3 4 1\n");
    let path = f.path().to_str().unwrap();
    let r = json(&["--input", path, "--mode", "cluster2"]);
    assert_eq!(exact(&r["results"]["values"]["ncc2"]), (1, 3));
    let txt = run(&["--input", path, "--mode", "oracle", "--format", "text"]);
    let txt = String::from_utf8(txt.stdout).unwrap();
    assert!(txt.contains("value h2 = 1/3"));
    assert!(txt.contains("partition h2 = {1,2} {3,4}"));
    let csv = run(&["--input", path, "--mode", "oracle", "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert!(csv.starts_with("section,name,num,den,decimal,value"));
    assert!(csv.contains("value,h2,1,3,"));
}

#[test]
fn verify_mode() {
    let r = json(&["--family", "path:4", "--mode", "verify", "--vector", "1/3,1/3,0,0"]);
    assert_eq!(r["results"]["flags"]["feasible"], true);
    assert_eq!(r["results"]["flags"]["exact"], true);
    assert_eq!(exact(&r["results"]["values"]["mu"]), (1, 3));
    let r = json(&["--family", "path:4", "--mode", "verify", "--vector", "0.25,0.25,0,0", "--mu", "0.5"]);
    assert_eq!(r["results"]["flags"]["feasible"], false);
    assert_eq!(r["results"]["flags"]["exact"], false);
    let r = json(&["--family", "path:4", "--mode", "verify", "--vector", "-1,0,0,1"]);
    assert_eq!(r["results"]["flags"]["zero_median"], true);
    assert_eq!(run(&["--family", "path:4", "--mode", "verify"]).status.code(), Some(2));
    assert_eq!(run(&["--family", "path:4", "--mode", "verify", "--vector", "1,2"]).status.code(), Some(2));
}

#[test]
fn chain_mode_lists_unevaluated() {
    let r = json(&["--family", "cycle:6", "--mode", "chain"]);
    let un: Vec<&str> = r["results"]["unevaluated"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(un, ["c3", "m3"]);
    assert!(r["results"]["flags"].get("rho2_eq_h2").is_some());
}

#[test]
fn input_errors_exit_two() {
    let empty = edge_file("# nothing here\n");
    let bad = edge_file("1 2\n2 x\n");
    let split = edge_file("1 2\n3 4\n");
    for (f, needle) in [(&empty, "no edges"), (&bad, "line 2"), (&split, "disconnected")] {
        let out = run(&["--input", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
        assert!(err.contains(needle), "{err}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(run(&["--input", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["--family", "path:30", "--mode", "oracle"]).status.code(), Some(2));
    assert_eq!(run(&["--family", "blob:3"]).status.code(), Some(2));
    assert_eq!(run(&["--family", "path:4", "--inits", "0"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["--family", "random:9,0.3,4", "--mode", "cluster3", "--seed", "3"][..],
        &["--family", "grid:3,3", "--mode", "oracle"][..],
        &["--family", "path:10", "--mode", "chain", "--format", "csv"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verbose_traces_go_to_stderr() {
    let out = run(&["--family", "path:6", "--verbose"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
    let quiet = run(&["--family", "path:6"]);
    assert_eq!(out.stdout, quiet.stdout);
}

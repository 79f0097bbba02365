use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spintorsion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = run(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spintorsion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const G2: &str = "1 2 3 : 1\n1 4 5 : 1\n1 6 7 : 1\n2 4 6 : 1\n2 5 7 : -1\n3 4 7 : -1\n3 5 6 : -1\n";

#[test]
fn holonomy_of_g2_form() {
    let f = write("g2.frm", G2);
    let v = json(&["holonomy", "--form", f.to_str().unwrap()]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dim"], 21);
    assert_eq!(v["semisimple"], true);
}

#[test]
fn holonomy_of_empty_form() {
    let f = write("empty.frm", "# nothing\n");
    assert_eq!(json(&["holonomy", "--form", f.to_str().unwrap()])["dim"], 0);
}

#[test]
fn spin9_check_all() {
    let v = json(&["spin9", "--check-all"]);
    assert_eq!(v["prolongation_dim"], 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn veronese_point() {
    let v = json(&["sasakian", "veronese", "--point", "1,1,1,1"]);
    assert_eq!(v["w"], "-1/6");
    assert_eq!(v["x"][0][1], "1/6");
    assert_eq!(v["norm_sqr"], "1/12");
    let v = json(&["sasakian", "veronese", "--point", "1,-2,0,3", "--four-form"]);
    assert_eq!(v["rank"], 10);
    assert_eq!(v["coefficients"][9], "-1/8");
}

#[test]
fn aw_commands() {
    let v = json(&["aw", "classify", "--s", "1", "--y", "2/5"]);
    assert_eq!(v["omega5_type"], "W1");
    let v = json(&["aw", "solve", "--s", "1/2*sqrt(3)", "--y", "2", "--point", "1,0,0,0"]);
    assert_eq!(v["unique"], true);
    let v = json(&["aw", "scan-roots"]);
    assert_eq!(v["count"], 2);
}

#[test]
fn reproducible_output() {
    let a = run(&["--json", "--seed", "5", "annihilators", "--dim", "6", "--grade", "3"]);
    let b = run(&["--json", "--seed", "5", "annihilators", "--dim", "6", "--grade", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--json", "--seed", "6", "annihilators", "--dim", "6", "--grade", "3"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let bad = write("bad.frm", "1 2 3 : 1\n1 2 : oops\n");
    let out = run(&["holonomy", "--form", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["holonomy", "--form", "/nonexistent/x.frm"]).status.code(), Some(2));
    assert_eq!(run(&["aw", "solve", "--s", "1", "--y", "3", "--point", "1,0,1,0"]).status.code(), Some(1));
    assert_eq!(run(&["--mode", "float", "prolong", "--form", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn transport_and_det4() {
    let t = write("cartan.frm", "1 2 3 : -1/2\n");
    let lp = write("tri.txt", "0 0 0\n0.5 0 0\n0 0.5 0\n");
    let v = json(&["transport", "--form", t.to_str().unwrap(), "--loop", lp.to_str().unwrap()]);
    assert!(v["angle"].as_f64().unwrap() > 0.0);
    let w = write("w.frm", "1 2 : 1\n3 4 : 1/2\n");
    assert_eq!(json(&["det4", "--a", "1", "--f", "-2", "--form", w.to_str().unwrap()])["equal"], true);
}

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn staircase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_staircase")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("staircase-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn classify_prints_the_type() {
    let o = staircase(&["classify", "1,2,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "tame-concealed");
    let o = staircase(&["classify", "2^5", "--json"]);
    assert_eq!(json(&o)["type"], "tame-not-concealed");
}

#[test]
fn classify_verify_is_consistent() {
    let o = staircase(&["classify", "2,3,4", "--verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["consistent"], true);
}

#[test]
fn radical_of_three_cubed() {
    let o = staircase(&["form", "3^3", "--radical"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["generators_in_lattice"], true);
}

#[test]
fn radical_needs_a_nonnegative_form() {
    let o = staircase(&["form", "4,6", "--radical"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_has_value_minus_one() {
    let o = staircase(&["witness", "4,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["q"], -1);
    assert_eq!(staircase(&["witness", "3,6"]).status.code(), Some(2));
}

#[test]
fn eval_round_trips_emitted_vectors() {
    let o = staircase(&["form", "3,6", "--nullroot"]);
    let path = temp_file("nullroot.json", &stdout(&o));
    let o = staircase(&["form", "3,6", "--eval", path.to_str().unwrap()]);
    assert_eq!(json(&o)["q"], 0);
}

#[test]
fn knit_counts_and_limits() {
    let o = staircase(&["knit", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["vertices"].as_array().unwrap().len(), 11);
    let o = staircase(&["knit", "3,6", "--orbit"]);
    assert_eq!(json(&o)["recognized_type"], "E8Tilde");
    assert_eq!(staircase(&["knit", "4,6", "--limit", "2"]).status.code(), Some(3));
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&staircase(&["orbit-type", "2,6"])).trim(), "D8");
    assert_eq!(stdout(&staircase(&["tensor", "3", "3"])).trim(), "tame-not-concealed");
    assert!(stdout(&staircase(&["hierarchy", "--max-n", "5", "--dot"])).starts_with("digraph"));
}

#[test]
fn nilpair_actions() {
    let pair = r#"{"dims":{"1,1":1,"2,1":1},"phi":{"2,1":[["1"]]}}"#;
    let path = temp_file("pair.json", pair);
    let p = path.to_str().unwrap();
    assert_eq!(json(&staircase(&["nilpair", "validate", p]))["valid"], true);
    let rep = json(&staircase(&["nilpair", "to-rep", p]));
    assert_eq!(rep["rows"], serde_json::json!([[1, 1]]));
    assert_eq!(json(&staircase(&["nilpair", "finite", p]))["finiteness"], "finite");
}

#[test]
fn family_members_and_comparison() {
    let o = staircase(&["family", "3,7", "--params", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["lambda"], serde_json::json!([3, 7]));
    let o = staircase(&["--seed", "5", "family", "3,7", "--params", "1,0,0", "--against", "3,0,0"]);
    assert_eq!(json(&o)["isomorphic"], true);
    assert_eq!(staircase(&["family", "3,7", "--params", "0,0,0"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(staircase(&["form", "3,3"]).status.code(), Some(1));
    assert_eq!(staircase(&["bogus"]).status.code(), Some(1));
    assert_eq!(staircase(&["classify", "0,2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&staircase(&["knit", "1,2,3", "--dot"]));
    assert_eq!(a, stdout(&staircase(&["knit", "1,2,3", "--dot"])));
}

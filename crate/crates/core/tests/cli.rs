mod common;

use std::process::{Command, Output};

use common::fixture_path;
use serde_json::{json, Value};

fn gtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn traces_on_o2_is_an_empty_successful_answer() {
    let out = gtrace(&["traces", &fx("o2"), "--extreme"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["extreme_traces"], json!([]));
}

#[test]
fn ktheory_on_m2() {
    let out = gtrace(&["ktheory", &fx("m2")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["K0"], json!({"free_rank": 1, "torsion": []}));
    assert_eq!(v["order_unit"], json!(2));
    assert_eq!(v["K1"]["free_rank"], json!(0));
}

#[test]
fn boundary_budget_exhaustion_exits_2() {
    let out = gtrace(&["boundary", &fx("fib"), "--depth", "12", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn input_errors_exit_1() {
    assert_eq!(gtrace(&["traces", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(gtrace(&["frobnicate"]).status.code(), Some(1));
    let noninvariant = fixture_path("m2-noninvariant").to_string_lossy().into_owned();
    let out = gtrace(&[
        "boundary",
        &fx("m2"),
        "--depth",
        "2",
        "--measure",
        &noninvariant,
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant"));
}

#[test]
fn dangling_edge_mentions_direction_convention() {
    let dir = std::env::temp_dir().join(format!("gtrace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"vertices":["u"],"edges":[{"id":"e","src":"u","rng":"w"}]}"#).unwrap();
    let out = gtrace(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("dangling endpoint w"));
    assert!(err.contains("src"));
}

#[test]
fn output_is_deterministic_and_canonical() {
    let measure = fixture_path("m2-measure").to_string_lossy().into_owned();
    let runs: Vec<Vec<&str>> = vec![
        vec!["info", "FIX:c3"],
        vec!["traces", "FIX:y", "--extreme", "--constraints"],
        vec!["ktheory", "FIX:inf"],
        vec!["boundary", "FIX:m2", "--depth", "4", "--measure", &measure, "--verify"],
        vec!["kpositive", "FIX:c3", "--vector", "x:1,y:-1,z:0"],
        vec!["certify", "FIX:fork"],
    ];
    for run in runs {
        let args: Vec<String> = run
            .iter()
            .map(|a| a.strip_prefix("FIX:").map(fx).unwrap_or_else(|| a.to_string()))
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = gtrace(&args);
        assert_eq!(
            first.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&first.stderr)
        );
        let seq = gtrace(&[&["--sequential"], args.as_slice()].concat());
        assert_eq!(first.stdout, seq.stdout, "{args:?}: policies disagree");
        assert_eq!(first.stdout, gtrace(&args).stdout, "{args:?}: not deterministic");
        let reparsed = gtrace::cli::canonical_json(&json_of(&first));
        assert_eq!(reparsed.as_bytes(), first.stdout.as_slice(), "{args:?}: not canonical");
        assert_eq!(json_of(&first)["schema_version"], json!(1));
    }
}

#[test]
fn star_commands() {
    let element = fixture_path("loop-element").to_string_lossy().into_owned();
    let out = gtrace(&["star", &fx("loop"), "--element", &element, "--degree", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = gtrace(&["star", &fx("loop"), "--element", &element, "--adjoint"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v.to_string().contains("\"e\""));
}

#[test]
fn help_describes_direction() {
    let out = gtrace(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("src is s(e)"));
}

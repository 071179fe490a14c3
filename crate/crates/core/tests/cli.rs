use std::process::Command;

use dblcat::cli::{run_with_env, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_with_env(std::iter::once("dblcat").chain(args.iter().copied()), None)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}")))
}

#[test]
fn equal_examples() {
    let out = run(&["equal", "-p", "z2", "i[-1] . i[-1]", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "Equal\n"));
    let out = run(&["equal", "-p", "z2", "--budget", "12", "-1 . i[-1]", "i[-1] . -1"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "Distinct(12)\n"));
}

#[test]
fn level_and_boundary() {
    let out = run(&["level", "-p", "z2", "(-1 . i[-1]) * i[-1]"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "2\n"));
    let out = run(&["boundary", "-p", "z2", "i[-1] . -1"]);
    assert_eq!(out.stdout, "(id_a, id_a, -1, -1)\n");
    let out = run(&["normalize", "-p", "z2", "(1 . -1) . -1"]);
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn json_schema() {
    let (code, v) = json(&["equal", "-p", "z2", "-1 . i[-1] . -1 . i[-1]", "i[-1] . -1 . i[-1] . -1"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "equal");
    assert_eq!(v["verdict"], "Equal");
    assert_eq!(v["budget"], 10);
    let steps = v["witness"].as_array().unwrap();
    assert_eq!(steps.first().unwrap()["expr"], "-1 . i[-1] . -1 . i[-1]");
    assert_eq!(steps.last().unwrap()["expr"], "i[-1] . -1 . i[-1] . -1");
    let (code, v) = json(&["level", "-p", "z2", "-1"]);
    assert_eq!((code, &v["result"], &v["witness"]), (0, &Value::from(1), &Value::Null));
    let (code, v) = json(&["check-axioms", "-p", "point", "--budget", "6"]);
    assert_eq!((code, &v["result"]["ok"]), (0, &Value::Bool(true)));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["--json", "check-adjunction", "-p", "z2", "--budget", "6", "--seed", "3"][..],
        &["--json", "enumerate", "-p", "z2", "--frame", "id_a,id_a,-1,-1", "--max-size", "6"][..],
        &["--json", "validate", "z2"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn enumerate_lists_classes() {
    let out = run(&["enumerate", "-p", "z2", "--frame", "id_a,id_a,1,1", "--max-size", "8", "--max-level", "1"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("i[-1] . -1 . i[-1]\t"));
    assert_eq!(lines[4], "4 classes");
}

#[test]
fn other_commands() {
    assert_eq!(run(&["project", "-q", "z2-abelian", "i[-1] . -1"]).stdout, "-1 . i[-1]\n");
    assert_eq!(run(&["map", "-f", "collapse", "-1 . i[-1]"]).stdout, "1 . i[1]\n");
    for name in ["point", "z2", "z2-abelian", "collapse", "id-point", "id-z2"] {
        assert_eq!(run(&["validate", name]).code, 0, "{name}");
    }
    assert_eq!(run(&["check-adjunction", "-q", "z2-abelian", "--budget", "8"]).code, 0);
    assert_eq!(run(&["check-axioms", "-p", "z2", "--budget", "8"]).code, 0);
}

#[test]
fn failed_checks_exit_one() {
    let dir = std::env::temp_dir().join(format!("dblcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free.json");
    std::fs::write(&path, r#"{"base": "z2", "relations": []}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("new globular cell"), "{}", out.stdout);
    let (code, v) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"], "i[-1] . -1 . i[-1]");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(run(&["equal", "-p", "z2", "1"]).code, 2);
    assert_eq!(run(&["level", "-p", "nope", "1"]).code, 2);
    assert_eq!(run(&["level", "-p", "z2", "(1"]).code, 2);
    assert_eq!(run(&["check-adjunction"]).code, 2);
    let out = run(&["level", "-p", "z2", "-1 * i[-1]"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("incompatible boundaries"));
}

#[test]
fn budget_from_environment() {
    let out = run_with_env(["dblcat", "--json", "equal", "-p", "z2", "-1 . i[-1]", "i[-1] . -1"], Some("6".into()));
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("\"verdict\":\"Distinct(6)\""), "{}", out.stdout);
    // The flag wins over the variable.
    let out = run_with_env(["dblcat", "--budget", "8", "equal", "-p", "z2", "-1 . i[-1]", "i[-1] . -1"], Some("6".into()));
    assert_eq!(out.stdout, "Distinct(8)\n");
    assert_eq!(run_with_env(["dblcat", "level", "-p", "z2", "1"], Some("many".into())).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dblcat");
    let status = |args: &[&str]| Command::new(bin).args(args).env_remove("DBLCAT_BUDGET").output().unwrap();
    let out = status(&["equal", "-p", "z2", "i[-1] . i[-1]", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "Equal\n");
    let out = status(&["equal", "-p", "z2", "--budget", "12", "-1 . i[-1]", "i[-1] . -1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
}

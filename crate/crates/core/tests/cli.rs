mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_motive-heights"));
    cmd.env_remove("MOTIVE_HEIGHTS_OUTPUT_DIR");
    cmd
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn error_of(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    let value: Value = serde_json::from_str(stderr.trim()).unwrap();
    let errors = common::validate(&common::load_schema("error"), &value);
    assert!(errors.is_empty(), "{errors:?}");
    (out.status.code().unwrap(), value)
}

#[test]
fn zeta_at_minus_eleven() {
    assert_eq!(stdout(&["zeta", "--neg", "-11"]).trim(), "691/32760");
}

#[test]
fn count_lemma_row() {
    let out = stdout(&["count-lemma", "--s", "1", "--t", "1", "--a", "1", "--b", "1", "--X", "4", "--format", "csv"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines, ["bound,exact,asymptotic,ratio", "4,6,8.0,0.75"]);
}

#[test]
fn theorem3_rows_agree() {
    let out = stdout(&["theorem3", "--config", config("theorem3-default.toml").to_str().unwrap(), "--schedule", "geometric:1e3,1e6,4"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].ends_with(",agree"));
    for row in &lines[1..] {
        assert!(row.ends_with(",true"), "{row}");
    }
}

#[test]
fn json_outputs_match_schemas() {
    let mixed = config("model-mixed.toml");
    let t2 = config("theorem2-unit.toml");
    let t3 = config("theorem3-rescaled.toml");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("zeta", vec!["zeta", "--neg", "-11"]),
        ("zeta", vec!["zeta", "--pos", "3"]),
        ("const", vec!["const", "--bernoulli", "12"]),
        ("const", vec!["const", "--binomial", "12,3"]),
        ("tables", vec!["tables", "--max-n", "40"]),
        ("count-lemma", vec!["count-lemma", "--s", "3", "--t", "9", "--schedule", "list:2,4,6"]),
        ("euler-sum", vec!["euler-sum", "--poly", "0,0,1", "--schedule", "linear:10,100,4"]),
        ("ratio", vec!["ratio", "--f1", "2,1;1,2", "--f2", "1", "--schedule", "list:10,100"]),
        ("theorem1", vec!["theorem1", "--config", mixed.to_str().unwrap(), "--schedule", "list:1,5,20", "--log-bounds"]),
        ("theorem2", vec!["theorem2", "--config", t2.to_str().unwrap(), "--schedule", "list:10,20", "--log-bounds"]),
        ("theorem2", vec!["theorem2", "--schedule", "list:20", "--log-bounds"]),
        ("theorem3", vec!["theorem3", "--config", t3.to_str().unwrap(), "--schedule", "list:3,5", "--log-bounds"]),
        ("theorem3", vec!["theorem3", "--schedule", "list:9", "--log-bounds"]),
    ];
    for (schema, mut args) in cases {
        args.extend(["--format", "json"]);
        let value: Value = serde_json::from_str(&stdout(&args)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let errors = common::validate(&common::load_schema(schema), &value);
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let mixed = config("model-mixed.toml");
    for args in [
        vec!["theorem1", "--config", mixed.to_str().unwrap(), "--schedule", "list:2,8", "--log-bounds", "--format", "json"],
        vec!["theorem3", "--schedule", "list:9,10", "--log-bounds"],
        vec!["ratio", "--f1", "1,0;0,1", "--f2", "1", "--schedule", "geometric:10,1000,3", "--format", "json"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn bad_arguments_exit_with_status_2() {
    for args in [
        vec!["count-lemma", "--s", "1", "--t", "1", "--schedule", "list:5,3"],
        vec!["count-lemma", "--s", "1", "--t", "1", "--schedule", "geometric:1,2,0"],
        vec!["zeta", "--neg", "-10"],
        vec!["no-such-command"],
        vec!["zeta", "--neg", "-11", "--precision", "8"],
        vec!["const", "--bernoulli", "100000"],
        vec!["const", "--binomial", "10000000000,5000000000"],
    ] {
        let (status, value) = error_of(&args);
        assert_eq!(status, 2, "{args:?}");
        assert_eq!(value["status"], 2);
    }
}

#[test]
fn invalid_model_exits_with_status_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("indefinite.toml");
    std::fs::write(&path, "degree = 2\n[archimedean]\ngram = [[\"1\", \"2\"], [\"2\", \"1\"]]\n").unwrap();
    let (status, value) = error_of(&["theorem1", "--config", path.to_str().unwrap(), "--schedule", "list:2"]);
    assert_eq!(status, 3);
    assert_eq!(value["error"], "model");
}

#[test]
fn unparsable_config_exits_with_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "degree = = 2").unwrap();
    let (status, _) = error_of(&["theorem1", "--config", path.to_str().unwrap()]);
    assert_eq!(status, 2);
}

#[test]
fn unwritable_output_exits_with_status_4() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let (status, _) = error_of(&["zeta", "--neg", "-11", "--output", target.to_str().unwrap()]);
    assert_eq!(status, 4);
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("MOTIVE_HEIGHTS_OUTPUT_DIR", dir.path())
        .args(["zeta", "--neg", "-11", "--output", "zeta.txt"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("zeta.txt")).unwrap();
    assert_eq!(written.trim(), "691/32760");
}

#[test]
fn shipped_configs_run() {
    for name in ["model-line.toml", "model-mixed.toml", "model-plane.toml"] {
        let path = config(name);
        let out = stdout(&["theorem1", "--config", path.to_str().unwrap(), "--schedule", "list:1,4", "--log-bounds"]);
        assert_eq!(out.lines().count(), 3, "{name}");
    }
    for name in ["theorem2-default.toml", "theorem2-unit.toml"] {
        let path = config(name);
        stdout(&["theorem2", "--config", path.to_str().unwrap(), "--schedule", "list:10", "--log-bounds"]);
    }
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fpdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpdim"))
        .args(args)
        .env_remove("FPDIM_SEED")
        .output()
        .unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fpdim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn basis_of_builtins() {
    let out = fpdim(&["basis", "--builtin", "a2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dim"], 3);
    let out = fpdim(&["basis", "--builtin", "example-6.2-1", "--format", "json"]);
    assert_eq!(json(&out)["dim"], 9);
}

#[test]
fn spec_file_round_trip() {
    let path = scratch("square.json");
    std::fs::write(
        &path,
        r#"{"name": "square", "vertices": [1, 2, 3, 4],
            "arrows": [{"name": "a", "from": 2, "to": 1}, {"name": "c", "from": 3, "to": 1},
                       {"name": "b", "from": 4, "to": 2}, {"name": "d", "from": 4, "to": 3}],
            "relations": [[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "-1", "path": ["c", "d"]}]],
            "field": "GF(5)"}"#,
    )
    .unwrap();
    let out = fpdim(&["fpd", "--spec", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["field"], "GF(5)");
    assert_eq!(r["fpd"]["value"], "0");
}

#[test]
fn input_errors_exit_one() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"vertices": [1, 2], "arrows": [{"name": "a", "from": 2, "to": 9}]}"#).unwrap();
    let out = fpdim(&["basis", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown vertex 9"));

    assert_eq!(fpdim(&["basis", "--builtin", "nope"]).status.code(), Some(1));
    assert_eq!(fpdim(&["fpd", "--builtin", "a4", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(fpdim(&["fpd", "--builtin", "a4", "--field", "GF:4"]).status.code(), Some(1));
    assert_eq!(fpdim(&["fpd"]).status.code(), Some(1));
    assert_eq!(fpdim(&["classify", "--builtin", "a4"]).status.code(), Some(1));
}

#[test]
fn inadmissible_bound_is_reported() {
    let out = fpdim(&["basis", "--builtin", "example-6.2-1", "--max-path-len", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not admissible"));
}

#[test]
fn incomplete_catalog_exits_two_unless_classified() {
    let out = fpdim(&["fpd", "--builtin", "canonical-A:2,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["fpd"]["method"], "witness-lower-bound");

    let out = fpdim(&["fpd", "--builtin", "canonical-A:2,1", "--classify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["fpd"]["method"], "theorem-verdict");
    assert_eq!(r["fpd"]["value"], "1");

    assert_eq!(fpdim(&["check", "--builtin", "canonical-D:4"]).status.code(), Some(2));
}

#[test]
fn check_and_classify_pass() {
    let out = fpdim(&["check", "--builtin", "example-6.2-1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["directed"], true);

    let out = fpdim(&["classify", "--builtin", "canonical-D:4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"]["value"], 1);
    assert_eq!(r["witness"]["rho"], "1");
}

#[test]
fn reports_are_byte_identical() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let out = fpdim(&["fpd", "--builtin", "example-6.2-2", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn environment_seed_wins() {
    let run = |env: Option<&str>, flag: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpdim"));
        cmd.args(["check", "--builtin", "a4", "--format", "json", "--quotients", "2", "--seed", flag]);
        match env {
            Some(s) => cmd.env("FPDIM_SEED", s),
            None => cmd.env_remove("FPDIM_SEED"),
        };
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(Some("9"), "1"), run(None, "9"));
    let out = Command::new(env!("CARGO_BIN_EXE_fpdim"))
        .args(["basis", "--builtin", "a2"])
        .env("FPDIM_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_goes_to_stdout() {
    let out = fpdim(&["fpd", "--builtin", "a4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fpd(E1) = 0 [exact-enumeration]"));
    assert!(text.contains("b-height 4"));
}

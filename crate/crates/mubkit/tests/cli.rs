//! End-to-end CLI tests: exit-code contract (0 verified, 1 failure,
//! 2 usage/format) and file round trips through real processes.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn mubkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_and_verify_roundtrip() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("wf3.json");
    let out = mubkit(&["gen", "wf", "--p", "3", "--n", "1", "--out", path_str(&file)]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("4 bases"));
    assert!(stdout(&out).contains("root order 3"));

    let out = mubkit(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("result: PASS"));
}

#[test]
fn gen_rejects_bad_params() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("x.json");
    let out = mubkit(&["gen", "wf", "--p", "2", "--n", "1", "--out", path_str(&file)]);
    assert_eq!(code(&out), 2);
    let out = mubkit(&["gen", "cubic", "--p", "3", "--out", path_str(&file)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_duplicated_basis_fails_with_exit_1() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("kr1.json");
    mubkit(&["gen", "kr", "--n", "1", "--out", path_str(&file)]);
    // duplicate the second basis
    let text = std::fs::read_to_string(&file).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let bases = v["bases"].as_array_mut().unwrap();
    let dup = bases[1].clone();
    bases.push(dup);
    std::fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();

    let out = mubkit(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_report_and_float_modes() {
    let dir = tempdir().unwrap();
    let exact = dir.path().join("wf5.json");
    let float = dir.path().join("wf5.float.json");
    let report = dir.path().join("report.json");
    let out = mubkit(&[
        "gen", "wf", "--p", "5", "--out", path_str(&exact),
        "--float-out", path_str(&float),
    ]);
    assert_eq!(code(&out), 0);

    // float file verifies in float mode, by default and explicitly
    assert_eq!(code(&mubkit(&["verify", path_str(&float)])), 0);
    assert_eq!(
        code(&mubkit(&["verify", path_str(&float), "--mode", "float", "--tol", "1e-9"])),
        0
    );
    // but not in exact mode
    assert_eq!(code(&mubkit(&["verify", path_str(&float), "--mode", "exact"])), 2);

    // exact file can also be checked in float mode
    assert_eq!(code(&mubkit(&["verify", path_str(&exact), "--mode", "float"])), 0);

    let out = mubkit(&["verify", path_str(&exact), "--report", path_str(&report)]);
    assert_eq!(code(&out), 0);
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["all_pass"], serde_json::Value::Bool(true));
    assert_eq!(rep["dim"], 5);
}

#[test]
fn malformed_file_is_exit_2() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"kind\": \"mub-exponents\"").unwrap();
    assert_eq!(code(&mubkit(&["verify", path_str(&file)])), 2);
    assert_eq!(code(&mubkit(&["verify", "/nonexistent/file.json"])), 2);
}

#[test]
fn bound_output_and_usage() {
    let out = mubkit(&["bound", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mub_bound(6) = 3"));
    assert!(stdout(&out).contains("impossible"));

    let out = mubkit(&["bound", "9"]);
    assert!(stdout(&out).contains("mub_bound(9) = 10"));
    assert!(stdout(&out).contains("prime power"));

    assert_eq!(code(&mubkit(&["bound", "1"])), 2);
}

#[test]
fn ring_inspection() {
    let out = mubkit(&["ring", "z12", "sylow"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[0, 3, 6, 9]"));
    assert!(stdout(&out).contains("unity 9"));

    let out = mubkit(&["ring", "z6", "nilradical"]);
    assert!(stdout(&out).contains("[0]"));

    let out = mubkit(&["ring", "z12", "transversal", "--s", "0,1,4,5,8,9", "--nil", "0,6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("valid transversal"));

    // closure failure is a property failure, exit 1, witness named
    let out = mubkit(&["ring", "z12", "transversal", "--s", "0,1,2,3,4,5", "--nil", "0,6"]);
    assert_eq!(code(&out), 1);

    let out = mubkit(&["ring", "z12", "split", "--s", "0,1,4,5,8,9", "--nil", "0,6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("S1 = [0, 9]"));
    assert!(stdout(&out).contains("S2 = [0, 4, 8]"));

    assert_eq!(code(&mubkit(&["ring", "nonsense", "sylow"])), 2);
}

#[test]
fn tensor_factor_roundtrip() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("kr1.json");
    let b = dir.path().join("wf3.json");
    let c = dir.path().join("dim6.json");
    let fa = dir.path().join("fa.json");
    let fb = dir.path().join("fb.json");
    mubkit(&["gen", "kr", "--n", "1", "--out", path_str(&a)]);
    mubkit(&["gen", "wf", "--p", "3", "--out", path_str(&b)]);

    let out = mubkit(&["tensor", path_str(&a), path_str(&b), "--out", path_str(&c)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dimension 6, 3 bases"));
    assert_eq!(code(&mubkit(&["verify", path_str(&c)])), 0);

    let out = mubkit(&[
        "factor", path_str(&c), "--dims", "2,3",
        "--out-a", path_str(&fa), "--out-b", path_str(&fb),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("L_a = 1/3"));
    assert_eq!(code(&mubkit(&["verify", path_str(&fa)])), 0);
    assert_eq!(code(&mubkit(&["verify", path_str(&fb)])), 0);
}

#[test]
fn factor_rejects_non_product() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("bell.json");
    // a Bell-type vector (1,0,0,1)/sqrt2 is not a product; exponent
    // files cannot hold zeros, so use a basis whose reshape has rank 2
    let json = serde_json::json!({
        "version": 1,
        "kind": "mub-exponents",
        "dimension": 4,
        "root_order": 4,
        "scale_denominator": 4,
        "bases": [[[0,0,0,1],[0,0,0,0],[0,1,0,0],[0,2,0,2]]],
        "provenance": "handmade"
    });
    std::fs::write(&file, json.to_string()).unwrap();
    let out = mubkit(&["factor", path_str(&file), "--dims", "2,2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a tensor product"));
}

#[test]
fn search_outputs() {
    let out = mubkit(&["search", "z6", "--budget", "200", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("<= bound 3"));

    let out = mubkit(&["search", "gf:3,1", "--budget", "50", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("4 (complete)"));

    let out = mubkit(&["search", "z6", "--budget", "0"]);
    assert!(stdout(&out).contains("max mutually unbiased subset: 1"));

    let dir = tempdir().unwrap();
    let witness = dir.path().join("witness.json");
    let out = mubkit(&[
        "search", "gr4:2", "--budget", "50", "--seed", "3", "--out", path_str(&witness),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("5 (complete)"));
    assert_eq!(code(&mubkit(&["verify", path_str(&witness)])), 0);
}

#[test]
fn max_order_env_override() {
    let dir = tempdir().unwrap();
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_mubkit"));
        cmd.args(["ring", "z101", "nilradical"]).current_dir(dir.path());
        if let Some(v) = env {
            cmd.env("MUBKIT_MAX_ORDER", v);
        }
        cmd.output().unwrap()
    };
    assert_eq!(run(None).status.code(), Some(0)); // within the default 256
    assert_eq!(run(Some("100")).status.code(), Some(2)); // tightened bound
}

#[test]
fn generalized_generation() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("gen.json");
    let out = mubkit(&["gen", "generalized", "--ring", "gf:3,1", "--out", path_str(&file)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("4 bases"));
    assert_eq!(code(&mubkit(&["verify", path_str(&file)])), 0);

    // no known recipe for a composite ring
    let out = mubkit(&["gen", "generalized", "--ring", "z6", "--out", path_str(&file)]);
    assert_eq!(code(&out), 2);
}

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn gradex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradex"))
        .args(args)
        .env_remove("GRADEX_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = gradex(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_dual_numbers() {
    let v = json_of(&["classify", &fixture("dual_numbers.json")]);
    assert_eq!(
        v,
        json!({"simple": false, "entire": false, "reduced": false})
    );
}

#[test]
fn classify_with_oracle_agrees() {
    let v = json_of(&["classify", &fixture("group_algebra_f2.json"), "--oracle"]);
    assert_eq!(v["oracle"]["agrees"], json!(true));
    assert_eq!(v["simple"], json!(true));
}

#[test]
fn laurent_corestriction_is_zero() {
    let v = json_of(&[
        "corestrict",
        &fixture("laurent.json"),
        "--phi",
        &fixture("zero_into_z.json"),
    ]);
    assert_eq!(v, json!({"corestriction": "zero ring"}));
}

#[test]
fn coarsen_compare_equal_betti_tables() {
    let v = json_of(&[
        "coarsen-compare",
        &fixture("residue_field.json"),
        "--psi",
        &fixture("z_to_zero.json"),
        "--cutoff",
        "6",
    ]);
    assert_eq!(v["betti_equal"], json!(true));
    assert_eq!(v["all_equal"], json!(true));
    assert_eq!(v["betti_coarse"]["6"], json!({"0": 1}));
}

#[test]
fn resolution_and_dimensions() {
    let v = json_of(&["resolve", &fixture("residue_field.json"), "--cutoff", "5"]);
    for i in 0..=5 {
        assert_eq!(v["betti"][i.to_string()], json!({ i.to_string(): 1 }));
    }
    for cmd in ["pd", "id", "fd"] {
        let v = json_of(&[cmd, &fixture("residue_field.json"), "--cutoff", "6"]);
        assert_eq!(v["value"], json!("≥6"), "{cmd}");
    }
}

#[test]
fn text_output() {
    let (code, out, _) = gradex(&[
        "resolve",
        &fixture("residue_field.json"),
        "--cutoff",
        "2",
        "--text",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().count() == 4, "{out}");
}

#[test]
fn schanuel_verified() {
    for len in ["1", "2"] {
        let v = json_of(&["schanuel", &fixture("residue_field.json"), "--length", len]);
        assert_eq!(v["verified"], json!(true));
        assert_eq!(v["source_hilbert"], v["target_hilbert"]);
    }
}

#[test]
fn principal_module_report() {
    let v = json_of(&["module", &fixture("principal.json")]);
    assert_eq!(v["free"], json!(true));
    assert_eq!(v["counterexample"]["graded_superfluous"], json!(true));
    assert_eq!(v["counterexample"]["coarsened_superfluous"], json!(false));
}

#[test]
fn oracle_diff_agrees() {
    let v = json_of(&["oracle-diff", &fixture("group_algebra_f2.json")]);
    assert_eq!(v["agree"], json!(true));
}

#[test]
fn adjoint_check_holds() {
    let v = json_of(&[
        "adjoint-check",
        &fixture("dual_numbers.json"),
        "--phi",
        &fixture("doubling.json"),
    ]);
    assert_eq!(v["all_hold"], json!(true));
}

#[test]
fn inline_input_and_field_override() {
    let ring = std::fs::read_to_string(fixture("dual_numbers.json")).unwrap();
    let v = json_of(&["classify", &ring, "--field", "Fp:3"]);
    assert_eq!(v["reduced"], json!(false));
}

#[test]
fn exit_codes() {
    assert_eq!(gradex(&["frobnicate"]).0, 1);
    assert_eq!(gradex(&[]).0, 1);
    let (code, _, err) = gradex(&["classify", &fixture("bad_torsion.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("group.torsion[0]"), "{err}");
    assert_eq!(gradex(&["classify", "{not json"]).0, 2);
    assert_eq!(gradex(&["classify", "/nonexistent/ring.json"]).0, 2);
    assert_eq!(gradex(&["spec", &fixture("dual_numbers.json")]).0, 3);
    assert_eq!(
        gradex(&[
            "resolve",
            &fixture("residue_field.json"),
            "--cutoff",
            "1000"
        ])
        .0,
        3
    );
}

#[test]
fn byte_identical_reruns() {
    let args = ["module", &fixture("residue_field.json")];
    let a = gradex(&args);
    let b = gradex(&args);
    assert_eq!(a, b);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gradex"))
        .args(["module", &fixture("residue_field.json")])
        .env("GRADEX_SEED", "42")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], json!(42));
    let v = json_of(&["module", &fixture("residue_field.json"), "--seed", "7"]);
    assert_eq!(v["seed"], json!(7));
}

#[test]
fn run_in_process() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gradex_cli::run(
        ["gradex", "classify", &fixture("dual_numbers.json")],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert!(String::from_utf8(out)
        .unwrap()
        .starts_with("{\"entire\":false"));
}

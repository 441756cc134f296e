use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn segal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segal"))
        .args(args)
        .env_remove("SEGAL_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn build(dir: &TempDir, input: &str, levels: usize) -> String {
    let out = path(dir, "presheaf.json");
    let run = segal(&[
        "build",
        "--input",
        &fixture(input),
        "--levels",
        &levels.to_string(),
        "--out",
        &out,
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    out
}

#[test]
fn build_records_level_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = build(&dir, "z3.json", 3);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["kind"], "gamma");
    assert_eq!(file["levels"], serde_json::json!([1, 3, 9, 27]));
    assert_eq!(file["presentation"]["type"], "algebraic");
}

#[test]
fn action_file_builds_a_g_presheaf() {
    let dir = tempfile::tempdir().unwrap();
    let out = build(&dir, "z2_inversion_on_z3.json", 2);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["kind"], "g-gamma");
    assert_eq!(file["levels"], serde_json::json!([1, 3, 9]));
}

#[test]
fn tabulated_build_matches_algebraic_digest() {
    let dir = tempfile::tempdir().unwrap();
    let algebraic = path(&dir, "a.json");
    let tabulated = path(&dir, "t.json");
    let input = fixture("klein.json");
    assert_eq!(
        code(&segal(&[
            "build", "--input", &input, "--levels", "2", "--out", &algebraic
        ])),
        0
    );
    assert_eq!(
        code(&segal(&[
            "build",
            "--input",
            &input,
            "--levels",
            "2",
            "--out",
            &tabulated,
            "--tabulate"
        ])),
        0
    );
    let read =
        |p: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap() };
    let (a, t) = (read(&algebraic), read(&tabulated));
    assert_eq!(t["presentation"]["type"], "tabulated");
    assert_eq!(a["digests"]["tables"], t["digests"]["tables"]);
    let check = segal(&["check", "--input", &tabulated, "--segal", "--upto", "2"]);
    assert_eq!(code(&check), 0);
    assert_eq!(json(&check)["result"]["digests"]["match"], true);
}

#[test]
fn check_passes_and_fails_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = build(&dir, "z3.json", 3);
    let pass = segal(&["check", "--input", &z3, "--segal", "--upto", "1"]);
    assert_eq!(code(&pass), 0);
    assert_eq!(json(&pass)["status"], "pass");

    let max = segal(&[
        "build",
        "--input",
        &fixture("max.json"),
        "--levels",
        "2",
        "--out",
        &path(&dir, "max.json"),
    ]);
    assert_eq!(code(&max), 0);
    let fail = segal(&[
        "check",
        "--input",
        &path(&dir, "max.json"),
        "--bousfield",
        "--upto",
        "2",
    ]);
    assert_eq!(code(&fail), 1);
    let report = json(&fail);
    assert_eq!(report["status"], "fail");
    assert!(!report["result"]["failure"].is_null());
}

#[test]
fn corrupted_presheaf_fails_check_and_roundtrip() {
    let input = fixture("z2_corrupted.json");
    assert_eq!(
        code(&segal(&[
            "check", "--input", &input, "--segal", "--upto", "2"
        ])),
        1
    );
    let roundtrip = segal(&["roundtrip", "--input", &input]);
    assert_eq!(code(&roundtrip), 3);
    assert_eq!(json(&roundtrip)["error"]["kind"], "algebra");
}

#[test]
fn roundtrip_every_fixture() {
    for name in [
        "trivial.json",
        "z2.json",
        "z3.json",
        "z4.json",
        "klein.json",
        "max.json",
        "z2_trivial_on_z2.json",
        "z2_inversion_on_z3.json",
        "z2_swap_on_klein.json",
    ] {
        let out = segal(&["roundtrip", "--input", &fixture(name)]);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(json(&out)["result"]["identical"], true, "{name}");
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = path(&dir, "bad.json");
    std::fs::write(&malformed, "{").unwrap();
    let out = segal(&["roundtrip", "--input", &malformed]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "input");

    let missing = path(&dir, "missing.json");
    assert_eq!(code(&segal(&["roundtrip", "--input", &missing])), 2);
}

#[test]
fn nonassociative_table_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = segal(&[
        "build",
        "--input",
        &fixture("nonassociative.json"),
        "--levels",
        "2",
        "--out",
        &path(&dir, "x.json"),
    ]);
    assert_eq!(code(&out), 3);
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn resource_limits_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = build(&dir, "z2.json", 2);
    let too_shallow = segal(&["classify", "--input", &z2, "--iterate", "2", "--dim", "3"]);
    assert_eq!(code(&too_shallow), 4);
    assert_eq!(json(&too_shallow)["error"]["kind"], "resource");

    let z3 = build(&dir, "z3.json", 4);
    let over_budget = segal(&["--budget", "10", "classify", "--input", &z3, "--dim", "4"]);
    assert_eq!(code(&over_budget), 4);
}

#[test]
fn classify_reports_homology_and_action() {
    let dir = tempfile::tempdir().unwrap();
    let x = build(&dir, "z2_inversion_on_z3.json", 4);
    let chains = path(&dir, "chains.json");
    let out = segal(&[
        "classify",
        "--input",
        &x,
        "--dim",
        "4",
        "--homology",
        "2",
        "--chains",
        &chains,
    ]);
    assert_eq!(code(&out), 0);
    let result = &json(&out)["result"];
    assert_eq!(result["homology"][1]["group"], "Z/3");
    let h1_action = result["g_action_on_H"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["degree"] == 1 && a["element"] == 1)
        .unwrap();
    assert_eq!(h1_action["scalar"], -1);
    assert!(result["oracle_comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["matches"] == true));
    assert_eq!(result["structure_map"]["isomorphism"], true);
    assert_eq!(result["structure_map"]["equivariant"], true);

    let export: Value = serde_json::from_str(&std::fs::read_to_string(&chains).unwrap()).unwrap();
    let ranks = export["ranks"].as_array().unwrap();
    for b in export["boundaries"].as_array().unwrap() {
        let p = b["degree"].as_u64().unwrap() as usize;
        assert_eq!(b["cols"], ranks[p]);
        assert_eq!(b["rows"], ranks[p - 1]);
    }
}

#[test]
fn object_zero_is_the_point() {
    let dir = tempfile::tempdir().unwrap();
    let x = build(&dir, "z3.json", 3);
    let out = segal(&["classify", "--input", &x, "--object", "0", "--dim", "3"]);
    assert_eq!(code(&out), 0);
    let result = &json(&out)["result"];
    assert_eq!(result["basepoint_object_is_point"], true);
    assert_eq!(result["levels"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn text_format_is_line_oriented() {
    let dir = tempfile::tempdir().unwrap();
    let x = build(&dir, "z3.json", 3);
    let out = segal(&[
        "--format", "text", "check", "--input", &x, "--segal", "--upto", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("segal check: PASS\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("  ")));
}

#[test]
fn out_file_replaces_stdout_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let x = build(&dir, "z3.json", 3);
    let report = PathBuf::from(path(&dir, "report.json"));
    std::fs::write(&report, "stale").unwrap();
    let out = segal(&[
        "check",
        "--input",
        &x,
        "--segal",
        "--upto",
        "3",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let plain = segal(&["check", "--input", &x, "--segal", "--upto", "3"]);
    assert_eq!(std::fs::read(&report).unwrap(), plain.stdout);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 2, "temporary files left behind");
}

#[test]
fn seed_changes_only_the_sample() {
    let dir = tempfile::tempdir().unwrap();
    let x = build(&dir, "z2_swap_on_klein.json", 3);
    let run = |seed: &str| {
        json(&segal(&[
            "--seed", seed, "check", "--input", &x, "--segal", "--upto", "3",
        ]))
    };
    let (a, b, c) = (run("1"), run("1"), run("2"));
    assert_eq!(a, b);
    assert_eq!(a["seed"], 1);
    assert_eq!(c["seed"], 2);
    assert_eq!(a["result"]["passed"], c["result"]["passed"]);
}

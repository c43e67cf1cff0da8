//! Byte-for-byte checks of CLI output against files in `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeprod"))
        .current_dir(dir("data"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&expected), "{name}");
}

#[test]
fn dist_examples() {
    golden("dist_case1.txt", &["dist", "case1_f.json", "case1_g.json"]);
    golden("dist_case2.txt", &["dist", "case2_f.json", "case2_g.json"]);
    golden("dist_tree.txt", &["dist", "tree_f.json", "tree_g.json"]);
}

#[test]
fn dist_of_equal_descriptors_is_zero_at_full_length() {
    let out = run(&["dist", "tree_f.json", "tree_f.json"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 CASE2 s=4\n");
}

#[test]
fn geometry_examples() {
    golden("median.json", &["median", "empty.json", "median_g.json", "median_h.json"]);
    golden("realize.json", &["realize", "type.json", "--salt", "s1"]);
    golden("type_tree.json", &["type", "tree_g.json"]);
    golden("geodesic_t5.json", &["geodesic", "case1_f.json", "case1_g.json", "--t", "5"]);
    golden("phi_l2.json", &["--mode", "float", "phi", "l2_f.json", "l2_g.json"]);
}

#[test]
fn phi_inverse_undoes_phi() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("image.json");
    let back = dir.path().join("back.json");
    let image_s = image.to_str().unwrap();
    assert_eq!(code(&run(&["phi", "tree_f.json", "case1_g.json", "--out", image_s])), 0);
    assert_eq!(code(&run(&["phi", "--inverse", "tree_f.json", image_s, "--out", back.to_str().unwrap()])), 0);
    let out = run(&["dist", back.to_str().unwrap(), "case1_g.json"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("0 CASE2"));
}

#[test]
fn reports() {
    golden("converge_42_3.csv", &["converge", "--seed", "42", "--count", "3", "--n", "16,64,256"]);
    golden("suite_metric_1_20.csv", &["suite", "metric", "--seed", "1", "--samples", "20"]);
}

#[test]
fn reports_are_deterministic() {
    let args = ["suite", "types", "--seed", "9", "--samples", "30"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    let out = run(&["dist", "case1_f.json", "case1_g.json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "7 CASE1 s=0\n");
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run(&["validate", "case1_f.json"])), 0);
    let bad = run(&["validate", "pi4_violation.json"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("junction 1"));
    assert_eq!(code(&run(&["validate", "malformed.json"])), 1);
    assert_eq!(code(&run(&["validate", "missing.json"])), 1);
    // L2 pieces need float mode
    assert_eq!(code(&run(&["validate", "l2_f.json"])), 2);
    assert_eq!(code(&run(&["--mode", "float", "validate", "l2_f.json"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["converge", "--n"])), 1);
    assert_eq!(code(&run(&["converge", "--count", "2", "--n", "24", "--strict"])), 1);
    assert_eq!(code(&run(&["suite", "bogus"])), 1);
    assert_eq!(code(&run(&["geodesic", "case1_f.json", "case1_g.json", "--t", "9"])), 1);
    assert_eq!(code(&run(&["geodesic", "case1_f.json", "case1_g.json", "--t", "x"])), 1);
    assert_eq!(code(&run(&[])), 1);
}

#[test]
fn unaligned_scale_warns_without_strict() {
    let out = run(&["converge", "--count", "2", "--n", "24"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn injected_fault_fails_suite() {
    assert_eq!(code(&run(&["suite", "metric", "--seed", "1", "--samples", "50"])), 0);
    assert_eq!(code(&run(&["suite", "metric", "--seed", "1", "--samples", "50", "--inject-fault"])), 2);
}

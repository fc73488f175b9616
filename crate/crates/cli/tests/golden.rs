//! Structured output against checked-in files. `UPDATE_GOLDEN=1` rewrites them.

use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str, args: &[&str]) {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".mod") { root().join("data").join(a).display().to_string() } else { a.to_string() })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_frobamp"))
        .args(&args)
        .args(["--format", "structured"])
        .output()
        .expect("frobamp runs");
    assert_ne!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let path = root().join("tests").join("golden").join(format!("{name}.jsonl"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
}

#[test]
fn famp_tangent() {
    golden("famp_tangent", &["famp", "-p", "5", "-p", "7", "tangent_p2.mod"]);
}

#[test]
fn cohomology_structure_sheaf() {
    golden("cohomology_structure", &["cohomology", "-p", "2", "--window", "-3..0", "structure_p2.mod"]);
}

#[test]
fn regularity_point_ideal() {
    golden("regularity_point_ideal", &["regularity", "point_ideal_p2.mod"]);
}

#[test]
fn minreg_point_ideal() {
    golden("minreg_point_ideal", &["minreg", "--max-e", "2", "point_ideal_p2.mod"]);
}

#[test]
fn resolve_omega() {
    golden("resolve_omega1_p3", &["resolve", "omega1_p3.mod"]);
}

#[test]
fn frobsplit() {
    golden("frobsplit_2_3_1", &["frobsplit", "--n", "2", "--d", "3", "--i", "1"]);
}

#[test]
fn schur() {
    golden("schur_3_2_1", &["schur", "4", "(3,2,1)"]);
}

#[test]
fn cl_check() {
    golden("cl_check_5_3", &["cl-check", "5", "3"]);
}

#[test]
fn verify() {
    golden("verify", &["verify"]);
}

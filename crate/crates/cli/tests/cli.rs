use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn frobamp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobamp")).args(args).output().expect("frobamp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn famp_of_tangent_bundle() {
    let o = frobamp(&["famp", "--prime", "5", &data("tangent_p2.mod")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("phi = 1\n"), "{text}");
    assert!(text.contains("  h^1  1  0  0  0"), "{text}");
}

#[test]
fn frobsplit_degree_two_on_the_line() {
    let o = frobamp(&["frobsplit", "--n", "1", "--d", "2", "--i", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("O: 1, O(-1): 1"));
}

#[test]
fn cohomology_of_structure_sheaf() {
    let o = frobamp(&["cohomology", "--prime", "2", "--window", "-3..0", &data("structure_p2.mod")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["d", "-3", "-2", "-1", "0"]);
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["h^2", "1", "0", "0", "0"]);
}

#[test]
fn multi_prime_sweep_reports_each_prime() {
    let o = frobamp(&["famp", "-p", "2", "-p", "3", "--format", "structured", &data("tangent_p2.mod")]);
    let text = stdout(&o);
    let primes: Vec<u64> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["prime"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, [2, 3]);
}

#[test]
fn structured_records_carry_version_prime_and_digest() {
    let o = frobamp(&["regularity", "--format", "structured", &data("point_ideal_p2.mod")]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["tool"], "frobamp");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["prime"], 3);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["sheaf_regularity"], 1);
}

#[test]
fn resolve_prints_betti_table() {
    let o = frobamp(&["resolve", &data("omega1_p3.mod")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("total:      6      4      1"), "{text}");
    assert!(text.contains("exact on the test window"));
}

#[test]
fn schur_and_carter_lusztig() {
    let o = frobamp(&["schur", "3", "(2,1)"]);
    assert!(stdout(&o).contains("dim S^(2,1) (rank 3) = 8"));
    let o = frobamp(&["cl-check", "4", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alternating sum = 0"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("frobamp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.mod");
    std::fs::write(&bad, "prime = 5\nnum_vars = 3\ntarget_twists = [0, 0]\nsource_twists = [1]\nmatrix = [[\"x0\"], [\"x1^2\"]]\n").unwrap();
    let o = frobamp(&["famp", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entry (1,0)"));

    assert_eq!(frobamp(&["famp", "-p", "4", &data("tangent_p2.mod")]).status.code(), Some(2));
    assert_eq!(frobamp(&["cohomology", "--window", "3..0", &data("tangent_p2.mod")]).status.code(), Some(2));
    assert_eq!(frobamp(&["cohomology", "--window=-9999..9999", &data("tangent_p2.mod")]).status.code(), Some(2));
    assert_eq!(frobamp(&["famp", &dir.join("missing.mod").display().to_string()]).status.code(), Some(2));
    assert_eq!(frobamp(&["cl-check", "3", "6"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

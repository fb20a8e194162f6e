use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_order-extension"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> (i32, String, String) {
    let path = fixture(file);
    let mut args = extra.to_vec();
    args.extend([cmd, "--file", path.to_str().unwrap()]);
    let out = run(&args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn machine_field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split(' ')
        .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn check_existing_instance() {
    let (code, out, _) = run_on("check", "unique.txt", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("exists: true"));
    assert!(out.contains("unique: true"));
}

#[test]
fn check_separation_instance() {
    let (code, out, _) = run_on("check", "separation.txt", &["--format", "machine"]);
    assert_eq!(code, 2);
    let line = out.lines().next().unwrap();
    assert_eq!(machine_field(line, "record"), Some("check"));
    assert_eq!(machine_field(line, "exists"), Some("false"));
    assert_eq!(machine_field(line, "in_sigma"), Some("true"));
    assert_eq!(machine_field(line, "in_sigma_star"), Some("false"));
    let cert: Vec<&str> = machine_field(line, "certificate")
        .unwrap()
        .split(',')
        .collect();
    assert_eq!(cert.len(), 2);
    assert_eq!(cert[0], "a");
}

#[test]
fn check_non_unique_instance() {
    let (code, out, _) = run_on("check", "non_unique.txt", &["--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(machine_field(&out, "unique"), Some("false"));
    assert_eq!(
        machine_field(out.trim_end(), "uniqueness_failure"),
        Some("not_maximal_in_sigma_star")
    );
}

#[test]
fn input_errors() {
    let (code, _, err) = run_on("check", "malformed_label.txt", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2 (order)"), "{err}");
    let (code, _, err) = run_on("check", "cyclic.txt", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("a < b < c < a"), "{err}");
    let (code, _, _) = run_on("check", "chains.txt", &[]);
    assert_eq!(code, 1, "check needs a partition");
    let (code, out, _) = run_on("check", "malformed_label.txt", &["--format", "machine"]);
    assert_eq!(code, 1);
    assert!(out.contains("record=error kind=parse exit=1 line=2 field=order"));
}

#[test]
fn extend_outputs() {
    let (code, out, _) = run_on("extend", "unique.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "blocks: [{a,c},{b}]\n");
    let (code, out, _) = run_on("extend", "forced.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "blocks: [{c},{a},{b}]\n");
    let (code, out, _) = run_on("extend", "unique.txt", &["--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out, "record=extension blocks=a,c|b\n");
}

#[test]
fn extend_with_intersection() {
    let path = fixture("unique.txt");
    let out = run(&[
        "extend",
        "--show-intersection",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("intersection: reflexive: true; pairs: (a,b) (a,c) (c,a) (c,b)"));
}

#[test]
fn extend_negatives() {
    let (code, _, err) = run_on("extend", "forced_comparable.txt", &[]);
    assert_eq!(code, 2);
    assert!(err.contains("a<b"), "{err}");
    let (code, out, _) = run_on("extend", "separation.txt", &[]);
    assert_eq!(code, 2);
    assert!(out.starts_with("certificate: a -> "));
}

#[test]
fn enumerate_listings() {
    let (code, out, _) = run_on("enumerate", "chains.txt", &[]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "1: [{a},{b},{c}]\n2: [{a},{c},{b}]\n3: [{c},{a},{b}]\ncount: 3\n"
    );
    let (code, out, _) = run_on("enumerate", "unique.txt", &["--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "record=extension index=1 blocks=a,c|b\nrecord=summary count=1\n"
    );
    let (code, _, _) = run_on("enumerate", "over_cap.txt", &[]);
    assert_eq!(code, 3);
}

#[test]
fn intersect_reports_pass() {
    let (code, out, _) = run_on("intersect", "unique.txt", &[]);
    assert_eq!(code, 0);
    assert!(out.contains("extensions: 1"));
    assert!(out.contains("formula: PASS"));
    let (code, out, _) = run_on("intersect", "chains.txt", &["--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "record=intersection extensions=3 reflexive=true pairs=a:b formula=PASS\n"
    );
    assert_eq!(run_on("intersect", "over_cap.txt", &[]).0, 3);
    assert_eq!(run_on("intersect", "separation.txt", &[]).0, 2);
}

#[test]
fn verify_levels() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--max-n",
        "3",
        "--reproducer-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=1: 1 partial orders x 1 partitions = 1 cases"));
    assert!(text.contains("n=3: 19 partial orders x 5 partitions = 95 cases"));
    assert!(text.ends_with("0 failures: PASS\n"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(run(&["verify", "--max-n", "12"]).status.code(), Some(3));
}

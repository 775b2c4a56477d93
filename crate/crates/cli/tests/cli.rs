use std::path::PathBuf;
use std::process::{Command, Output};

fn revring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revring")).args(args).env_remove("REVRING_STEP_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("revring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const G: &str = "x3*x2*x1 - Q*x3^2 - Q^-2*x2^2 - x1^2 + 2*(1 + Q^-2)";

#[test]
fn t6_is_confluent() {
    let o = revring(&["check", "preset:T6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("AMB x1*x2*x3 : RESOLVED"), "{out}");
    assert!(out.trim_end().ends_with("CONFLUENT"));
}

#[test]
fn t6_casimir_is_central() {
    let o = revring(&["central", "preset:T6", "--expr", G]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "CENTRAL");

    let o = revring(&["central", "preset:T6", "--expr", "x1*x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT-CENTRAL [x1, -] = "));
}

#[test]
fn toy_file_is_not_confluent() {
    let path = scratch("toy.alg", "algebra toy\ngenerators x1 x2 x3\nrelations\nx1*x2 -> x3\nx2*x3 -> x1\n");
    let o = revring(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("-x1^2 + x3^2"), "{out}");
    assert!(out.trim_end().ends_with("NOT-CONFLUENT"));
}

#[test]
fn malformed_file_exits_two_with_position() {
    let path = scratch("bad.alg", "algebra bad\ngenerators x y\nrelations\nx*y -> z\n");
    let o = revring(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.alg:4:"), "{err}");
}

#[test]
fn normal_form_strategies_agree() {
    let a = revring(&["nf", "preset:T6", "--expr", "x1^2*x2*x3"]);
    let b = revring(&["nf", "preset:T6", "--expr", "x1^2*x2*x3", "--strategy", "random:7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn step_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_revring"))
        .args(["nf", "preset:T6", "--expr", "x1^3*x2^3"])
        .env("REVRING_STEP_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL "));
}

#[test]
fn growth_prints_estimate() {
    let o = revring(&["growth", "preset:T5", "--max", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("0,1\n"), "{out}");
    let est = out.lines().find_map(|l| l.strip_prefix("GK-ESTIMATE ")).unwrap();
    assert!(est.parse::<f64>().unwrap() > 2.0);
}

#[test]
fn basis_counts_words() {
    let o = revring(&["basis", "preset:T6", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("COUNT 4\n"));
}

#[test]
fn preset_text_reloads() {
    let o = revring(&["preset", "T6_quot(3)"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("quot.alg", &stdout(&o));
    let o = revring(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let list = stdout(&revring(&["preset", "--list"]));
    assert!(list.lines().any(|l| l == "WQ"));
}

#[test]
fn torus_images_define_a_hom() {
    let o = revring(&["hom", "preset:WQ", "preset:T6", "--images", "y + y^-1; x + x^-1; y*x + y^-1*x^-1", "--probe", G]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("OK ")).count(), 4);
}

#[test]
fn reversibility_and_identities() {
    let o = revring(&["rev", "preset:Vt", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures"));
}

#[test]
fn exact_bracket_and_points() {
    let o = revring(&["pbracket", "--potential", "x1*x2*x3", "x1", "x2"]);
    assert_eq!(stdout(&o).trim(), "x1*x2");
    let o = revring(&["pbracket", "--potential", "x1*x2*x3", "--point", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "POISSON-POINT");
}

#[test]
fn degenerate_parameter_needs_override() {
    assert_eq!(revring(&["check", "preset:Tq(1)"]).status.code(), Some(2));
    assert_eq!(revring(&["--allow-degenerate", "check", "preset:Tq(1)"]).status.code(), Some(0));
}

#[test]
fn suite_subset_passes() {
    let o = revring(&["paper-suite", "--only", "1,13,16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS [")).count(), 3);
    assert!(out.trim_end().ends_with("SUITE PASS 3/3"));
    assert_eq!(revring(&["paper-suite", "--only", "17"]).status.code(), Some(2));
}

use std::fs;
use std::process::{Command, Output};

const LAW: &str = "x1 x2 x2 x1 = x2 x1 x1 x2";

fn nilcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn width_of_cyclic_generator() {
    let o = nilcert(&["width", "catalog:cyc9", "--subset", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn general_passes_and_report_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("a.json");
    let r2 = dir.path().join("b.json");
    for r in [&r1, &r2] {
        let o = nilcert(&[
            "certify-general",
            "catalog:mc9",
            "--subset",
            "conj-closure a,b",
            "--law",
            LAW,
            "--report",
            r.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("observed class: 2"));
    }
    let a = fs::read(&r1).unwrap();
    assert_eq!(a, fs::read(&r2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    for key in ["instance", "checks", "quantities", "verdict", "flags"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verdict"], "passed");
    assert_eq!(v["quantities"]["observed_class"], 2);
}

#[test]
fn heis3_is_refuted() {
    let o = nilcert(&["certify-general", "catalog:heis3", "--law", LAW]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failed check: is_powerful"));
}

#[test]
fn tight_semple_bounds_exhaust() {
    let o = nilcert(&["certify-general", "catalog:mc9", "--law", LAW, "--semple-bounds", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_instance_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pc");
    fs::write(&path, "prime 3\ngens a b\ncomm a b = b\n").unwrap();
    let o = nilcert(&["width", path.to_str().unwrap(), "--subset", "a"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3:"), "{err}");
}

#[test]
fn instance_file_with_subset_and_law() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mc9.pc");
    let src = format!(
        "{}subset conj-closure a, b\nlaw {LAW}\n",
        nilcert::catalog::entry("mc9").unwrap().source
    );
    fs::write(&path, src).unwrap();
    let o = nilcert(&["certify-general", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(nilcert(&["certify-general", "catalog:nope", "--law", LAW]).status.code(), Some(3));
    assert_eq!(nilcert(&["certify-general", "catalog:mc9"]).status.code(), Some(3));
    assert_eq!(nilcert(&["certify-general", "catalog:mc9", "--law", "x1 x2^-1 = x2"]).status.code(), Some(3));
    assert_eq!(nilcert(&["hall", "catalog:heis3", "--normal", "z"]).status.code(), Some(3));
}

#[test]
fn lemma_subcommands() {
    let o = nilcert(&["nbf", "catalog:mc9", "--normal", "power 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k: 2"));
    let o = nilcert(&["black", "catalog:heis3", "--law-word", "x1^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k: 2"));
    let o = nilcert(&["hall", "catalog:heis3", "--normal", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nilcert(&["hall", "catalog:mc9", "--normal", "b"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verbal_subcommand() {
    let o = nilcert(&["certify-verbal", "catalog:heis3", "--word", "[x1, x2]", "--law", "x1 x2 = x2 x1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn catalog_listing() {
    let o = nilcert(&["catalog", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("mc9")));
    let o = nilcert(&["catalog", "show", "heis3"]);
    assert!(stdout(&o).contains("comm b a = c"));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cylkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylkit"))
        .args(args)
        .env_remove("CYLKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn repo_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Equation lines of an exported suite, skipping label comments.
fn equation_lines(text: &str) -> usize {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .count()
}

#[test]
fn fpa_exhaustive_passes() {
    let o = cylkit(&[
        "check",
        "--suite",
        "FPA",
        "--alpha",
        "3",
        "--base",
        "2",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("170 instances, 170 valid"));
}

#[test]
fn false_equation_exits_one_with_counterexample() {
    let o = cylkit(&["check", "--eq", "c(0,x0)=x0", "--alpha", "3", "--base", "2"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("counterexample  x0="), "{out}");
    assert!(out.contains("# first failure: c(0,x0)=x0"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        code(&cylkit(&["check", "--eq", "c(0,x0", "--base", "2"])),
        2
    );
    assert_eq!(
        code(&cylkit(&["check", "--eq", "c(7,x0)=x0", "--base", "2"])),
        2
    );
    assert_eq!(code(&cylkit(&["export-suite", "--suite", "NOPE"])), 2);
    assert_eq!(
        code(&cylkit(&["roundtrip", "--structure", "/nonexistent.json"])),
        2
    );
    assert_eq!(
        code(&cylkit(&["represent", "--demo", "sec6", "--W", "5"])),
        2
    );
}

#[test]
fn exported_derived_suite_rechecks() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("derived.eq");
    let o = cylkit(&["export-suite", "--suite", "DERIVED_P", "--out", s(&file)]);
    assert_eq!(code(&o), 0);
    let o = cylkit(&[
        "check",
        "--eq-file",
        s(&file),
        "--alpha",
        "3",
        "--base",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("69 instances"));
}

#[test]
fn export_counts() {
    let fpa = cylkit(&["export-suite", "--suite", "FPA", "--alpha", "3"]);
    assert_eq!(code(&fpa), 0);
    assert_eq!(equation_lines(&stdout(&fpa)), 170);
    let pa = stdout(&cylkit(&[
        "export-suite",
        "--suite",
        "PA_SUBST",
        "--alpha",
        "3",
    ]));
    assert_eq!(equation_lines(&pa), 2725);
    assert_eq!(
        pa.lines().filter(|l| l.starts_with("# (2)[sigma=")).count(),
        729
    );
}

#[test]
fn roundtrip_on_bundled_example() {
    let o = cylkit(&["roundtrip", "--structure", s(&repo_file("two_atoms.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("isomorphic (2 atoms"));
}

#[test]
fn cm_then_uf_recovers_the_sequence_structure() {
    let dir = TempDir::new().unwrap();
    let tables = dir.path().join("tables.json");
    let o = cylkit(&["cm", "--seq", "2", "--sig", "CSP", "--out", s(&tables)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("8 atoms"));
    let back = stdout(&cylkit(&["uf", "--tables", s(&tables)]));
    let direct = stdout(&cylkit(&["uf", "--seq", "2", "--sig", "CSP"]));
    let parse = |t: &str| serde_json::from_str::<serde_json::Value>(t).unwrap();
    assert_eq!(parse(&back)["T"], parse(&direct)["T"]);
    assert_eq!(code(&cylkit(&["roundtrip", "--tables", s(&tables)])), 0);
}

#[test]
fn uf_rejects_tables_that_are_not_a_powerset() {
    let dir = TempDir::new().unwrap();
    let tables = dir.path().join("bad.json");
    let o = cylkit(&["cm", "--seq", "1", "--out", s(&tables)]);
    assert_eq!(code(&o), 0);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tables).unwrap()).unwrap();
    v["c"] = serde_json::json!([[0, 1, 2], [0, 1, 2], [0, 1, 2]]);
    std::fs::write(&tables, v.to_string()).unwrap();
    let o = cylkit(&["uf", "--tables", s(&tables)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn represent_demos_pass_and_write_manifests() {
    let dir = TempDir::new().unwrap();
    let m5 = dir.path().join("sec5.json");
    let o = cylkit(&[
        "represent",
        "--demo",
        "sec5",
        "--alpha",
        "3",
        "--base",
        "2",
        "--W",
        "3",
        "--out",
        s(&m5),
    ]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    assert!(!stdout(&o).contains(" fail "));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&m5).unwrap()).unwrap();
    assert_eq!(v["W"], 3);
    assert!(v["matchings"]["f_01"].is_array());

    let m6 = dir.path().join("sec6.json");
    let o = cylkit(&[
        "represent",
        "--demo",
        "sec6",
        "--alpha",
        "3",
        "--base",
        "2",
        "--out",
        s(&m6),
    ]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("rep  pass"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&m6).unwrap()).unwrap();
    assert_eq!(v["group"].as_array().unwrap().len(), 6);
}

#[test]
fn substitution_demo_defaults_w_to_base_times_alpha() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let o = cylkit(&["represent", "--demo", "sec5", "--base", "2", "--out", s(&m)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(v["W"], 6);
}

#[test]
fn search_finds_and_misses() {
    let o = cylkit(&["search", "--eq", "c(0,x0)=x0", "--max-atoms", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("counterexample on 1 atoms"));
    let o = cylkit(&[
        "search",
        "--eq",
        "c(0,c(0,x0))=c(0,x0)",
        "--max-atoms",
        "2",
        "--restricted",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("no counterexample"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_cylkit"))
            .args([
                "check",
                "--suite",
                "FPA",
                "--base",
                "3",
                "--mode",
                "random",
                "--samples",
                "300",
                "--seed",
                "11",
                "--format",
                "json",
                "--out",
            ])
            .arg(&out)
            .env("CYLKIT_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "1"));
    assert_eq!(a, run("c.json", "3"));
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["seed"], 11);
}

#[test]
fn thread_count_comes_from_flag_or_environment() {
    let run = |flag: Option<&str>, env: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cylkit"));
        if let Some(n) = flag {
            c.args(["--threads", n]);
        }
        let o = c
            .args(["check", "--eq", "c(0,c(0,x0))=c(0,x0)"])
            .env("CYLKIT_THREADS", env)
            .output()
            .unwrap();
        code(&o)
    };
    assert_eq!(run(Some("2"), "1"), 0);
    assert_eq!(run(None, "3"), 0);
    assert_eq!(run(None, "not-a-number"), 2);
}

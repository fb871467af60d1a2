//! End-to-end runs through the library pipelines and the binary.

use std::path::PathBuf;
use std::process::Command as Process;

use monodromy::cli::{corpus, envelope, run, run_input, run_selftest, Command, RunConfig, EXIT_ISOTRIVIAL, EXIT_PARSE};
use monodromy::exact::Polynomial;
use monodromy::family::{monodromy_group, FamilySpec, RunOptions};
use serde_json::{json, Value};

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_monodromy"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("monodromy-pipeline-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn corpus_passes_selftest() {
    let rows = run_selftest(&corpus(), &RunOptions::default());
    for row in &rows {
        assert!(row.pass, "{}: {:?}", row.name, row.mismatches);
    }
    assert!(rows.len() >= 13);
}

/// The index of the pullback group is at most the degree of the base change.
/// The two groups live in different fiber frames, so containment only holds up
/// to conjugation; the mod-2 image orders still divide.
#[test]
fn pullback_by_t_squared() {
    let opts = RunOptions::default();
    let h = Polynomial::from_i64(&[0, 0, 1]);
    for (p, q) in [("t", "1"), ("-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27"), ("1", "t")] {
        let fam = FamilySpec::parse("base", p, q).unwrap();
        let base = monodromy_group(&fam, &opts).unwrap();
        let pulled = monodromy_group(&fam.pullback(&h), &opts).unwrap();
        let (a, b) = (base.subgroup.sl_index.finite().unwrap(), pulled.subgroup.sl_index.finite().unwrap());
        assert_eq!(b % a, 0, "{p}, {q}");
        assert!(b / a <= 2, "{p}, {q}: {a} -> {b}");
        assert_eq!(base.subgroup.mod2_image_order % pulled.subgroup.mod2_image_order, 0);
        assert_eq!(pulled.deg_j, 2 * base.deg_j);
    }
}

#[test]
fn envelopes_are_deterministic() {
    let input = json!({"p": "t", "q": "1"});
    let cfg = RunConfig::new(Command::Analyze);
    let opts = cfg.options();
    let a = envelope(&cfg, &run_input(Command::Analyze, &input, &opts).unwrap());
    let b = envelope(&cfg, &run_input(Command::Analyze, &input, &opts).unwrap());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn run_reads_and_writes_files() {
    let input = scratch("twist.json");
    std::fs::write(&input, r#"{"p": "t", "q": "1", "d": "t"}"#).unwrap();
    let cfg = RunConfig { input: Some(input), quiet: true, ..RunConfig::new(Command::Twist) };
    let (env, outcome) = run(&cfg).unwrap();
    assert!(outcome.ok);
    assert_eq!(env["summary"]["twisted_sl_index"], json!(1));
    assert_eq!(env["config"]["command"], json!("twist"));
}

#[test]
fn binary_analyze_writes_json() {
    let input = scratch("analyze.json");
    let output = scratch("analyze.out.json");
    std::fs::write(&input, r#"{"p": "1", "q": "t"}"#).unwrap();
    let status = bin()
        .args(["analyze", "--quiet", "--precision", "96", "--seed", "7"])
        .arg("--input")
        .arg(&input)
        .arg("--output")
        .arg(&output)
        .status()
        .unwrap();
    assert!(status.success());
    let env: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(env["ok"], json!(true));
    assert_eq!(env["config"]["precision"], json!(96));
    assert_eq!(env["summary"]["deg_j"], json!(2));
}

#[test]
fn binary_exit_codes() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"p": "t +* 1", "q": "1"}"#).unwrap();
    let out = bin().args(["analyze", "--quiet"]).arg("--input").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], json!("parse_error"));

    let iso = scratch("iso.json");
    std::fs::write(&iso, r#"{"p": "t^2", "q": "t^3"}"#).unwrap();
    let out = bin().args(["analyze", "--quiet"]).arg("--input").arg(&iso).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ISOTRIVIAL));

    let out = bin().args(["analyze", "--precision", "8"]).arg("--input").arg(&iso).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn binary_selftest_passes() {
    let out = bin().args(["selftest", "--quiet"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let env: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env["ok"], json!(true));
}

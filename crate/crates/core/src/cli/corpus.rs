//! The bundled corpus: one JSON file per scenario, each naming a command,
//! its input fields and the expected summary values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::{run_input, CliError, Command, Outcome};
use crate::braid::{mu_a, mu_b};
use crate::family::RunOptions;
use crate::sl2::SL2Matrix;

const FILES: &[(&str, &str)] = &[
    ("full_index_one", include_str!("../../corpus/full_index_one.json")),
    ("legendre", include_str!("../../corpus/legendre.json")),
    ("twist_by_t", include_str!("../../corpus/twist_by_t.json")),
    ("kodaira_x3_x_t", include_str!("../../corpus/kodaira_x3_x_t.json")),
    ("hyperell_genus3_slice", include_str!("../../corpus/hyperell_genus3_slice.json")),
    ("quartic_fermat", include_str!("../../corpus/quartic_fermat.json")),
    ("pullback_t_squared", include_str!("../../corpus/pullback_t_squared.json")),
    ("legendre_pullback", include_str!("../../corpus/legendre_pullback.json")),
    ("poles", include_str!("../../corpus/poles.json")),
    ("constant_p", include_str!("../../corpus/constant_p.json")),
    ("quintic_q", include_str!("../../corpus/quintic_q.json")),
    ("isotrivial", include_str!("../../corpus/isotrivial.json")),
    ("hyperell_sextic", include_str!("../../corpus/hyperell_sextic.json")),
];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub command: Command,
    /// The whole document; pipelines ignore fields they do not use.
    pub input: Value,
    pub expect: BTreeMap<String, Value>,
    /// Expected error kind, for entries that must be rejected.
    pub expect_error: Option<String>,
}

impl CorpusEntry {
    pub fn parse(name: &str, text: &str) -> Result<Self, CliError> {
        let input: Value = serde_json::from_str(text).map_err(|e| CliError::Json(format!("{name}: {e}")))?;
        let command: Command = serde_json::from_value(input["command"].clone())
            .map_err(|e| CliError::Json(format!("{name}: command: {e}")))?;
        let expect = match input.get("expect") {
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| CliError::Json(format!("{name}: expect: {e}")))?,
            None => BTreeMap::new(),
        };
        let expect_error = input.get("expect_error").and_then(Value::as_str).map(str::to_string);
        Ok(CorpusEntry { name: name.to_string(), command, input, expect, expect_error })
    }

    pub fn run(&self, opts: &RunOptions) -> Result<Outcome, CliError> {
        run_input(self.command, &self.input, opts)
    }
}

/// The corpus compiled into the binary.
pub fn corpus() -> Vec<CorpusEntry> {
    FILES.iter().map(|(n, t)| CorpusEntry::parse(n, t).expect("bundled corpus parses")).collect()
}

/// Every `*.json` file of a directory, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(io)?;
            CorpusEntry::parse(&p.file_stem().unwrap_or_default().to_string_lossy(), &text)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestRow {
    pub name: String,
    pub command: String,
    pub pass: bool,
    pub mismatches: Vec<String>,
    pub summary: BTreeMap<String, Value>,
}

fn braid_relations_row() -> SelftestRow {
    let (a, b) = (mu_a(), mu_b());
    let aba = &(&a * &b) * &a;
    let bab = &(&b * &a) * &b;
    let ab = &a * &b;
    let ab3 = &(&ab * &ab) * &ab;
    let mut mismatches = Vec::new();
    if aba != bab {
        mismatches.push("mu(A)mu(B)mu(A) != mu(B)mu(A)mu(B)".to_string());
    }
    if ab3 != SL2Matrix::minus_identity() {
        mismatches.push("(mu(A)mu(B))^3 != -I".to_string());
    }
    let mut summary = BTreeMap::new();
    summary.insert("braid_relation".into(), json!(aba == bab));
    summary.insert("ab_cubed_is_minus_I".into(), json!(ab3 == SL2Matrix::minus_identity()));
    SelftestRow { name: "braid_relations".into(), command: "builtin".into(), pass: mismatches.is_empty(), mismatches, summary }
}

fn check(entry: &CorpusEntry, opts: &RunOptions) -> SelftestRow {
    let mut mismatches = Vec::new();
    let mut summary = BTreeMap::new();
    match (entry.run(opts), &entry.expect_error) {
        (Ok(o), None) => {
            for (k, want) in &entry.expect {
                match o.summary.get(k) {
                    Some(got) if got == want => {}
                    Some(got) => mismatches.push(format!("{k}: expected {want}, got {got}")),
                    None => mismatches.push(format!("{k}: missing from summary")),
                }
            }
            if !o.ok {
                mismatches.push("internal checks failed".to_string());
            }
            summary = o.summary;
        }
        (Ok(_), Some(kind)) => mismatches.push(format!("expected error {kind}, got a report")),
        (Err(e), Some(kind)) if e.kind() == kind => {
            summary.insert("error".into(), json!(kind));
        }
        (Err(e), _) => mismatches.push(format!("error {}: {e}", e.kind())),
    }
    SelftestRow {
        name: entry.name.clone(),
        command: entry.command.to_string(),
        pass: mismatches.is_empty(),
        mismatches,
        summary,
    }
}

pub fn run_selftest(entries: &[CorpusEntry], opts: &RunOptions) -> Vec<SelftestRow> {
    std::iter::once(braid_relations_row()).chain(entries.iter().map(|e| check(e, opts))).collect()
}

pub(super) fn table(rows: &[SelftestRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("{:<6} {:<10} {}\n", if r.pass { "PASS" } else { "FAIL" }, r.command, r.name));
        for m in &r.mismatches {
            out.push_str(&format!("         {m}\n"));
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} passed\n", rows.len()));
    out
}

pub(super) fn outcome(rows: &[SelftestRow]) -> Outcome {
    let passed = rows.iter().filter(|r| r.pass).count();
    let mut summary = BTreeMap::new();
    summary.insert("passed".into(), json!(passed));
    summary.insert("failed".into(), json!(rows.len() - passed));
    Outcome { summary, ok: passed == rows.len(), report: json!({ "rows": rows }) }
}

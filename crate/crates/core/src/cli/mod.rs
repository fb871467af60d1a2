//! Command-line front end: JSON family files in, JSON reports out.
//!
//! Every report is an envelope holding the tool version, the full run
//! configuration, a flat `summary` of the headline numbers and the complete
//! `report`. Nothing time-dependent is recorded, so identical inputs and
//! options give byte-identical output.

mod corpus;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::BraidError;
use crate::exact::{parse_bipoly, parse_rational_function, ExactError, ParseError, Rational};
use crate::family::{
    monodromy_group, quartic_pencil_family, verify_twist_relation, FamilyError, FamilySpec, QuarticPencil, RunOptions,
    TwistSpec,
};
use crate::hyperell::{mod2_monodromy, universal_slice, HyperellError, HyperellFamilySpec};
use crate::kodaira::{surface_bound, KodairaError};
use crate::subgroup::{mod_image, Index, SubgroupError, DEFAULT_MAX_COSETS};

pub use corpus::{corpus, run_selftest, CorpusEntry, SelftestRow};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ISOTRIVIAL: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_PRECISION: i32 = 5;
pub const EXIT_CHECK_FAILED: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Monodromy group of y² = x³ + p(t)x + q(t) with every bound checked.
    Analyze,
    /// Twist relation between a family and its quadratic twist by d(t).
    Twist,
    /// Kodaira fiber types, Σe and the index bound 2Σe.
    Kodaira,
    /// Mod-2 monodromy of a hyperelliptic family y² = f(x, t).
    Hyperell,
    /// Monodromy of the genus-1 double covers over a pencil of lines.
    Quartic,
    /// Run the bundled corpus and print a pass/fail table.
    Selftest,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "monodromy", version, about = "Monodromy groups of genus-1 and hyperelliptic families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON input file (a corpus directory for `selftest`).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Working precision in bits for root tracking.
    #[arg(long, global = true, default_value_t = crate::exact::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Coset enumeration budget.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Seed for the basepoint and projection choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// No human-readable summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub precision: u32,
    pub max_cosets: usize,
    pub seed: u64,
    pub quiet: bool,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            command: c.command,
            input: c.input,
            output: c.output,
            precision: c.precision,
            max_cosets: c.max_cosets,
            seed: c.seed,
            quiet: c.quiet,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            precision: crate::exact::DEFAULT_PRECISION,
            max_cosets: DEFAULT_MAX_COSETS,
            seed: 0,
            quiet: true,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision < 53 {
            return Err(CliError::Config(format!("precision must be at least 53 bits, got {}", self.precision)));
        }
        if self.max_cosets < 1 {
            return Err(CliError::Config("max-cosets must be at least 1".into()));
        }
        Ok(())
    }

    pub fn options(&self) -> RunOptions {
        RunOptions { precision: self.precision, max_cosets: self.max_cosets, seed: self.seed, ..RunOptions::default() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid input JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Hyperell(#[from] HyperellError),
}

/// The error innermost in a chain that decides the exit code.
enum Root {
    Parse,
    Isotrivial,
    Budget,
    Precision(u32),
    Other,
}

fn family_root(e: &FamilyError) -> Root {
    match e {
        FamilyError::Parse(_) | FamilyError::DegenerateFamily | FamilyError::ZeroTwist => Root::Parse,
        FamilyError::IsotrivialFamily { .. } | FamilyError::Kodaira(KodairaError::IsotrivialFamily) => Root::Isotrivial,
        FamilyError::Subgroup(SubgroupError::BudgetExceeded { .. }) => Root::Budget,
        FamilyError::Braid(BraidError::PrecisionExhausted { bits }) => Root::Precision(*bits),
        FamilyError::Exact(ExactError::PrecisionExhausted { bits }) => Root::Precision(*bits),
        _ => Root::Other,
    }
}

impl CliError {
    fn root(&self) -> Root {
        match self {
            CliError::Config(_) | CliError::Json(_) | CliError::Parse(_) => Root::Parse,
            CliError::Io { .. } => Root::Other,
            CliError::Family(e) => family_root(e),
            CliError::Kodaira(KodairaError::IsotrivialFamily) => Root::Isotrivial,
            CliError::Kodaira(_) => Root::Other,
            CliError::Hyperell(e) => match e {
                HyperellError::Parse(_)
                | HyperellError::NotMonic
                | HyperellError::Degree { .. }
                | HyperellError::DegenerateFamily
                | HyperellError::GenusTooSmall(_) => Root::Parse,
                HyperellError::BudgetExceeded { .. } => Root::Budget,
                HyperellError::Braid(BraidError::PrecisionExhausted { bits })
                | HyperellError::Exact(ExactError::PrecisionExhausted { bits }) => Root::Precision(*bits),
                HyperellError::Family(f) => family_root(f),
                _ => Root::Other,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Root::Parse => EXIT_PARSE,
            Root::Isotrivial => EXIT_ISOTRIVIAL,
            Root::Budget => EXIT_BUDGET,
            Root::Precision(_) => EXIT_PRECISION,
            Root::Other => EXIT_OTHER,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.root() {
            Root::Parse => "parse_error",
            Root::Isotrivial => "isotrivial_family",
            Root::Budget => "budget_exceeded",
            Root::Precision(_) => "precision_exhausted",
            Root::Other => "error",
        }
    }

    /// Machine-readable diagnostic.
    pub fn diagnostic(&self) -> Value {
        let mut d = json!({ "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() });
        if let CliError::Family(FamilyError::IsotrivialFamily { order, .. }) = self {
            d["finite_group_order"] = json!(order);
        }
        if let Root::Precision(bits) = self.root() {
            d["bits"] = json!(bits);
        }
        json!({ "error": d })
    }
}

/// Result of one pipeline: the full report, the headline numbers, and
/// whether every internal check held.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub summary: BTreeMap<String, Value>,
    pub report: Value,
    pub ok: bool,
}

#[derive(Debug, Deserialize)]
struct GenusOneInput {
    #[serde(default)]
    label: Option<String>,
    p: String,
    q: String,
    #[serde(default)]
    d: Option<String>,
}

#[derive(Debug, Deserialize)]
struct SliceInput {
    genus: u32,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Deserialize)]
struct HyperellInput {
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    f: Option<String>,
    #[serde(default)]
    genus: Option<u32>,
    #[serde(default)]
    universal_slice: Option<SliceInput>,
}

#[derive(Debug, Deserialize)]
struct QuarticInput {
    #[serde(default)]
    label: Option<String>,
    quartic: String,
    #[serde(default)]
    base: Option<[String; 2]>,
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Json(e.to_string()))
}

fn family_of(i: &GenusOneInput) -> Result<FamilySpec, CliError> {
    Ok(FamilySpec::parse(i.label.clone().unwrap_or_else(|| "family".into()), &i.p, &i.q)?)
}

fn index_value(i: Index) -> Value {
    serde_json::to_value(i).expect("index serializes")
}

fn big_value(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn analyze(input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    let fam = family_of(&from_value(input)?)?;
    let rep = monodromy_group(&fam, opts)?;
    let gens = rep.subgroup.generators.clone();
    let mut s = BTreeMap::new();
    s.insert("label".into(), json!(fam.label));
    s.insert("sl_index".into(), index_value(rep.subgroup.sl_index));
    s.insert("psl_index".into(), index_value(rep.subgroup.psl_index));
    s.insert("contains_minus_I".into(), json!(rep.subgroup.contains_minus_i));
    s.insert("mod2_image_order".into(), json!(rep.subgroup.mod2_image_order));
    s.insert("mod3_image_order".into(), json!(mod_image(&gens, 3).len()));
    s.insert("deg_j".into(), json!(rep.deg_j));
    s.insert("m".into(), json!(rep.m));
    s.insert("sum_e".into(), json!(rep.sum_e));
    s.insert("r".into(), json!(rep.r));
    s.insert("punctures".into(), json!(rep.lassos.len()));
    s.insert("infinity_type".into(), json!(rep.infinity_type.to_string()));
    s.insert("all_bounds_hold".into(), json!(rep.all_bounds_hold()));
    Ok(Outcome { summary: s, ok: rep.all_bounds_hold(), report: to_json(&rep) })
}

fn twist(input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    let i: GenusOneInput = from_value(input)?;
    let fam = family_of(&i)?;
    let d = i.d.as_deref().ok_or_else(|| CliError::Json("twist input needs a field \"d\"".into()))?;
    let rep = verify_twist_relation(&fam, &TwistSpec::parse(d)?, opts)?;
    let mut s = BTreeMap::new();
    s.insert("label".into(), json!(fam.label));
    s.insert("d".into(), json!(d));
    s.insert("original_sl_index".into(), index_value(rep.original.subgroup.sl_index));
    s.insert("twisted_sl_index".into(), index_value(rep.direct.sl_index));
    s.insert("predicted_sl_index".into(), index_value(rep.predicted.sl_index));
    s.insert("psl_index".into(), index_value(rep.direct.psl_index));
    s.insert("sl_ratio".into(), json!(rep.sl_ratio));
    s.insert("twist_case".into(), to_json(&rep.classification.case));
    s.insert("chi".into(), json!(rep.chi));
    s.insert("all_checks_hold".into(), json!(rep.all_hold()));
    Ok(Outcome { summary: s, ok: rep.all_hold(), report: to_json(&rep) })
}

fn kodaira(input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    let fam = family_of(&from_value(input)?)?;
    let sb = surface_bound(&fam)?;
    let rep = monodromy_group(&fam, opts)?;
    let mut types: BTreeMap<String, u32> = BTreeMap::new();
    for p in &sb.places {
        *types.entry(p.kodaira_type.to_string()).or_default() += p.count;
    }
    let sl = rep.subgroup.sl_index.finite();
    let holds = sl.is_some_and(|n| n <= sb.bound);
    let mut s = BTreeMap::new();
    s.insert("label".into(), json!(fam.label));
    s.insert("fiber_types".into(), json!(types));
    s.insert("infinity_type".into(), json!(sb.places.last().map(|p| p.kodaira_type.to_string())));
    s.insert("sum_e".into(), json!(sb.sum_e));
    s.insert("deg_j".into(), json!(sb.deg_j));
    s.insert("bound".into(), json!(sb.bound));
    s.insert("sl_index".into(), index_value(rep.subgroup.sl_index));
    s.insert("bound_holds".into(), json!(holds));
    let ok = holds && sb.sum_e == sb.deg_j && rep.all_bounds_hold();
    Ok(Outcome { summary: s, ok, report: json!({ "surface": to_json(&sb), "monodromy": to_json(&rep) }) })
}

fn hyperell(input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    let i: HyperellInput = from_value(input)?;
    let fam = match (&i.f, &i.universal_slice) {
        (Some(f), None) => {
            let label = i.label.clone().unwrap_or_else(|| "hyperelliptic family".into());
            match i.genus {
                Some(g) => HyperellFamilySpec::with_genus(label, parse_bipoly(f, "x", "t")?, g)?,
                None => HyperellFamilySpec::parse(label, f)?,
            }
        }
        (None, Some(sl)) => {
            let mut fam = universal_slice(sl.genus, sl.seed)?;
            if let Some(l) = &i.label {
                fam.label = l.clone();
            }
            fam
        }
        _ => return Err(CliError::Json("hyperell input needs exactly one of \"f\" and \"universal_slice\"".into())),
    };
    let rep = mod2_monodromy(&fam, opts)?;
    let mut s = BTreeMap::new();
    s.insert("label".into(), json!(fam.label));
    s.insert("f".into(), json!(fam.f.display_with("x", "t")));
    s.insert("genus".into(), json!(rep.g));
    s.insert("punctures".into(), json!(rep.punctures));
    s.insert("permutation_group_order".into(), json!(rep.permutation_group_order));
    s.insert("full_symmetric".into(), json!(rep.full_symmetric));
    s.insert("group_order".into(), json!(rep.group_order));
    s.insert("ambient_order".into(), big_value(&rep.ambient_order));
    s.insert("index".into(), big_value(&rep.index));
    s.insert("bound".into(), json!(rep.bound.as_ref().map(Rational::to_string)));
    s.insert("sharp".into(), json!(rep.sharp));
    s.insert("symplectic".into(), json!(rep.symplectic));
    let ok = rep.symplectic && rep.bound_holds && rep.permutation_group_order >= rep.group_order;
    Ok(Outcome { summary: s, ok, report: to_json(&rep) })
}

fn quartic(input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    let i: QuarticInput = from_value(input)?;
    let base = match &i.base {
        Some([x, y]) => {
            let c = |s: &str| -> Result<Rational, CliError> {
                let f = parse_rational_function(s, "t")?;
                match f.is_constant() {
                    true => Ok(f.eval(&Rational::from_integer(0.into())).expect("constant")),
                    false => Err(CliError::Json(format!("base point coordinate {s:?} is not a number"))),
                }
            };
            Some((c(x)?, c(y)?))
        }
        None => None,
    };
    let q = QuarticPencil { quartic: parse_bipoly(&i.quartic, "x", "y")?, base };
    let rep = quartic_pencil_family(&q, opts)?;
    let mut s = BTreeMap::new();
    s.insert("label".into(), json!(i.label.unwrap_or_else(|| "quartic".into())));
    s.insert("base_point".into(), json!(rep.base_point));
    s.insert("tangency_punctures".into(), json!(rep.tangency_punctures));
    s.insert("chart_punctures".into(), json!(rep.chart_punctures));
    s.insert("sl_index".into(), index_value(rep.monodromy.subgroup.sl_index));
    s.insert("jacobian_sl_index".into(), index_value(rep.jacobian_sl_index));
    s.insert("all_checks_hold".into(), json!(rep.all_hold()));
    Ok(Outcome { summary: s, ok: rep.all_hold(), report: to_json(&rep) })
}

/// Runs one pipeline on an already-parsed input document.
pub fn run_input(command: Command, input: &Value, opts: &RunOptions) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze => analyze(input, opts),
        Command::Twist => twist(input, opts),
        Command::Kodaira => kodaira(input, opts),
        Command::Hyperell => hyperell(input, opts),
        Command::Quartic => quartic(input, opts),
        Command::Selftest => Err(CliError::Config("selftest takes no input document".into())),
    }
}

fn read_input(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(e.to_string()))
}

/// The report envelope for a configuration and outcome.
pub fn envelope(config: &RunConfig, outcome: &Outcome) -> Value {
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "config": {
            "command": config.command,
            "input": config.input.as_ref().map(|p| p.display().to_string()),
            "precision": config.precision,
            "max_cosets": config.max_cosets,
            "seed": config.seed,
        },
        "ok": outcome.ok,
        "summary": outcome.summary,
        "report": outcome.report,
    })
}

/// Runs a configuration, returning the envelope.
pub fn run(config: &RunConfig) -> Result<(Value, Outcome), CliError> {
    config.validate()?;
    let opts = config.options();
    let outcome = match config.command {
        Command::Selftest => {
            let entries = match &config.input {
                Some(dir) => corpus::load_dir(dir)?,
                None => corpus(),
            };
            let rows = run_selftest(&entries, &opts);
            if !config.quiet {
                eprint!("{}", corpus::table(&rows));
            }
            corpus::outcome(&rows)
        }
        cmd => {
            let path = config.input.as_ref().ok_or_else(|| CliError::Config(format!("{cmd} needs --input")))?;
            let input = read_input(path)?;
            run_input(cmd, &input, &opts)?
        }
    };
    Ok((envelope(config, &outcome), outcome))
}

fn human_summary(outcome: &Outcome) -> String {
    let mut out = String::new();
    for (k, v) in &outcome.summary {
        out.push_str(&format!("{k:>24}: {v}\n"));
    }
    out.push_str(&format!("{:>24}: {}\n", "checks", if outcome.ok { "all hold" } else { "FAILED" }));
    out
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let config = RunConfig::from(cli);
    match run(&config) {
        Ok((env, outcome)) => {
            let text = serde_json::to_string_pretty(&env).expect("json") + "\n";
            match &config.output {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        let err = CliError::Io { path: p.display().to_string(), message: e.to_string() };
                        eprintln!("{}", err.diagnostic());
                        return err.exit_code();
                    }
                }
                None => print!("{text}"),
            }
            if !config.quiet && config.command != Command::Selftest {
                eprint!("{}", human_summary(&outcome));
            }
            if outcome.ok {
                0
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    main_with(Cli::parse())
}

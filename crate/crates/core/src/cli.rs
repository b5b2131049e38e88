//! Command-line front end.
//!
//! Exit codes: 0 success, 1 the checked property is false (a witness is
//! printed), 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::{self, Summary, Violation};
use crate::io::{
    export_dot, export_matrix, function_map, opens_labels, parse_instance, resolve_mode, InstanceDocument,
    PairFailure, TopologyMode, Witness,
};
use crate::order::{ContourKind, Preorder};
use crate::representation::{
    construct_finite_lsc_rp_multiutility, construct_indicator_multiutility, construct_lsc_multiutility,
    construct_rp_utility, is_multiutility, is_richter_peleg_multiutility, preorder_semicontinuity, semicontinuity,
    LscRpResult, PreorderSemicontinuity, SemicontinuityKind, ValueFunction,
};
use crate::topology::Topology;

#[derive(Debug, Parser)]
#[command(name = "ordtop", version, about = "Finite preorders, their topologies and semicontinuous representations")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an instance file, or re-check a printed witness against it.
    Validate {
        file: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print the open sets of a topology on the instance.
    Topology {
        file: PathBuf,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Check that every weak lower contour is closed.
    CheckLsc {
        file: PathBuf,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Build representations, or check the instance's own functions.
    Represent {
        file: PathBuf,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Decide whether a finite lsc Richter-Peleg multi-utility exists.
    DecideRp {
        file: PathBuf,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Run the theorem checkers on one instance or exhaustively.
    Theorems {
        file: Option<PathBuf>,
        /// Every preorder and every topology up to --max-size points.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Mode name, `discrete`, `indiscrete`, or a JSON file of label lists.
        #[arg(long)]
        topology: Option<String>,
    },
    /// Run the checkers on seeded random instances.
    Mine {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Export the preorder as a DOT Hasse diagram or a JSON matrix.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// Exit code and rendered output. The binary sends code-2 output to stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn new(code: i32, output: impl Into<String>) -> Self {
        Outcome { code, output: output.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome::new(code, e.render().to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(e) if json => Outcome::new(2, format!("{}\n", json!({ "error": e.to_string() }))),
        Err(e) => Outcome::new(2, format!("error: {e}\n")),
    }
}

fn load(path: &Path) -> Result<InstanceDocument> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::validation(path.display().to_string(), format!("cannot read: {e}")))?;
    parse_instance(&text)
}

/// `--topology` accepts a mode name, `discrete`, `indiscrete`, or a path to
/// a JSON file holding a list of label lists. Without the flag the
/// document's own topology is used.
fn select_topology(doc: &InstanceDocument, p: &Preorder, flag: Option<&str>) -> Result<Topology> {
    let mode = |m: TopologyMode| resolve_mode(m, p);
    match flag {
        None => doc.topology(p)?.ok_or_else(|| Error::validation("topology", "no topology given")),
        Some("upper") => mode(TopologyMode::Upper),
        Some("alexandrov") => mode(TopologyMode::Alexandrov),
        Some("scott") => mode(TopologyMode::Scott),
        Some("order") => mode(TopologyMode::Order),
        Some("discrete") => Ok(Topology::discrete(p.len())),
        Some("indiscrete") => Ok(Topology::indiscrete(p.len())),
        Some("explicit") => doc.topology(p)?.ok_or_else(|| Error::validation("topology", "document has none")),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::validation("--topology", format!("unknown mode or unreadable file: {e}")))?;
            let opens: Vec<Vec<String>> = serde_json::from_str(&text)
                .map_err(|e| Error::validation("--topology", format!("expected a list of label lists: {e}")))?;
            let sets = opens.iter().map(|o| p.set_from_labels(o)).collect::<Result<Vec<_>>>()?;
            Topology::from_opens(p.len(), sets).map_err(|v| Error::validation("--topology", format!("{v:?}")))
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let json = cli.json;
    match cli.command {
        Command::Validate { file, witness } => validate(&load(&file)?, witness.as_deref(), json),
        Command::Topology { file, topology } => {
            let doc = load(&file)?;
            let p = doc.preorder()?;
            let t = select_topology(&doc, &p, topology.as_deref())?;
            let opens = opens_labels(&p, &t);
            if json {
                return Ok(Outcome::new(0, render(&json!({ "command": "topology", "opens": opens }))));
            }
            let mut out = format!("{} open sets\n", opens.len());
            for o in opens {
                out.push_str(&format!("{{{}}}\n", o.join(",")));
            }
            Ok(Outcome::new(0, out))
        }
        Command::CheckLsc { file, topology } => {
            let doc = load(&file)?;
            let p = doc.preorder()?;
            let t = select_topology(&doc, &p, topology.as_deref())?;
            check_lsc(&p, &t, json)
        }
        Command::Represent { file, topology } => {
            let doc = load(&file)?;
            let p = doc.preorder()?;
            let t = match topology.as_deref() {
                None => doc.topology(&p)?,
                flag => Some(select_topology(&doc, &p, flag)?),
            };
            represent(&doc, &p, t.as_ref(), json)
        }
        Command::DecideRp { file, topology } => {
            let doc = load(&file)?;
            let p = doc.preorder()?;
            let t = select_topology(&doc, &p, topology.as_deref())?;
            decide_rp(&p, &t, json)
        }
        Command::Theorems { file, all, max_size, topology } => {
            let summary = match (file, all) {
                (Some(file), false) => {
                    let doc = load(&file)?;
                    let p = doc.preorder()?;
                    let t = select_topology(&doc, &p, topology.as_deref())?;
                    harness::check_instance(&p, &t)?
                }
                (None, true) => {
                    if max_size > harness::HARNESS_LIMIT.min(crate::order::ENUMERATION_LIMIT) {
                        return Err(Error::TooLarge { limit: crate::order::ENUMERATION_LIMIT, actual: max_size });
                    }
                    harness::exhaustive(max_size)?
                }
                _ => return Err(Error::validation("theorems", "give either an instance file or --all")),
            };
            Ok(summary_outcome("theorems", &summary, json, json!({ "max_size": max_size })))
        }
        Command::Mine { seed, trials, max_size } => {
            let summary = harness::mine(seed, trials, max_size)?;
            let extra = json!({ "seed": seed, "trials": trials, "max_size": max_size });
            Ok(summary_outcome("mine", &summary, json, extra))
        }
        Command::Export { file, format } => {
            let p = load(&file)?.preorder()?;
            let text = match format {
                ExportFormat::Dot => export_dot(&p),
                ExportFormat::Json => render(&serde_json::to_value(export_matrix(&p)).expect("serializable")),
            };
            Ok(Outcome::new(0, text))
        }
    }
}

fn render(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

fn witness_value(w: &Witness) -> Value {
    serde_json::to_value(w).expect("serializable")
}

fn failure(command: &str, json: bool, message: String, witness: &Witness, mut fields: Value) -> Outcome {
    if json {
        fields["command"] = json!(command);
        fields["witness"] = witness_value(witness);
        return Outcome::new(1, render(&fields));
    }
    Outcome::new(1, format!("{message}\nwitness: {}\n", serde_json::to_string(witness).expect("serializable")))
}

fn validate(doc: &InstanceDocument, witness: Option<&Path>, json: bool) -> Result<Outcome> {
    let p = doc.preorder()?;
    let t = doc.topology(&p)?;
    let functions = doc.functions()?;
    if let Some(path) = witness {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::validation(path.display().to_string(), format!("cannot read: {e}")))?;
        let w: Witness = serde_json::from_str(&text).map_err(|e| Error::validation("witness", e.to_string()))?;
        let confirmed = w.confirm(doc)?;
        let code = if confirmed { 0 } else { 1 };
        if json {
            return Ok(Outcome::new(code, render(&json!({ "command": "validate", "witness_confirmed": confirmed }))));
        }
        let msg = if confirmed { "witness confirmed" } else { "witness NOT confirmed" };
        return Ok(Outcome::new(code, format!("{msg}\n")));
    }
    let names: Vec<&String> = functions.iter().map(|(n, _)| n).collect();
    if json {
        let v = json!({
            "command": "validate",
            "ok": true,
            "elements": p.len(),
            "relation_pairs": p.pairs().len(),
            "classes": p.quotient().classes.len(),
            "topology_opens": t.as_ref().map(|t| t.opens().len()),
            "functions": names,
        });
        return Ok(Outcome::new(0, render(&v)));
    }
    let mut out = format!(
        "valid: {} elements, {} strict-or-equivalent pairs, {} classes\n",
        p.len(),
        p.pairs().len(),
        p.quotient().classes.len()
    );
    if let Some(t) = t {
        out.push_str(&format!("topology: {} open sets\n", t.opens().len()));
    }
    if !names.is_empty() {
        out.push_str(&format!("functions: {}\n", functions.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")));
    }
    Ok(Outcome::new(0, out))
}

fn contour_witness(p: &Preorder, t: &Topology, a: usize) -> Result<Witness> {
    Ok(Witness::ContourNotClosed {
        element: p.label(a).to_owned(),
        contour: p.set_labels(p.contour(a, ContourKind::WeakLower)?),
        topology: opens_labels(p, t),
    })
}

fn check_lsc(p: &Preorder, t: &Topology, json: bool) -> Result<Outcome> {
    match preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower)?.into_witness() {
        None if json => Ok(Outcome::new(0, render(&json!({ "command": "check-lsc", "lsc": true })))),
        None => Ok(Outcome::new(0, "lower semicontinuous: every weak lower contour is closed\n")),
        Some(a) => {
            let w = contour_witness(p, t, a)?;
            let contour = p.set_labels(p.contour(a, ContourKind::WeakLower)?);
            let msg = format!("not lower semicontinuous: contour of {} = {{{}}} is not closed", p.label(a), contour.join(","));
            Ok(failure("check-lsc", json, msg, &w, json!({ "lsc": false })))
        }
    }
}

fn named(prefix: &str, p: &Preorder, members: &[ValueFunction]) -> Vec<(String, ValueFunction)> {
    members.iter().enumerate().map(|(i, f)| (format!("{prefix}_{}", p.label(i)), f.clone())).collect()
}

fn family_value(p: &Preorder, fs: &[(String, ValueFunction)]) -> Value {
    let map: serde_json::Map<String, Value> =
        fs.iter().map(|(n, f)| (n.clone(), json!(function_map(p, f)))).collect();
    Value::Object(map)
}

fn family_text(fs: &[(String, ValueFunction)]) -> String {
    fs.iter().map(|(n, f)| format!("  {n} = {f}\n")).collect()
}

fn represent(doc: &InstanceDocument, p: &Preorder, t: Option<&Topology>, json: bool) -> Result<Outcome> {
    let provided = doc.functions()?;
    if provided.is_empty() {
        let indicator = named("u", p, construct_indicator_multiutility(p).members());
        let rp = vec![("f".to_owned(), construct_rp_utility(p))];
        let lsc = match t {
            Some(t) => match construct_lsc_multiutility(p, t) {
                Ok(f) => Some(named("v", p, f.members())),
                Err(Error::NotLscPreorder(_)) => None,
                Err(e) => return Err(e),
            },
            None => None,
        };
        if json {
            let v = json!({
                "command": "represent",
                "indicator": family_value(p, &indicator),
                "rp_utility": family_value(p, &rp),
                "lsc_family": lsc.as_ref().map(|l| family_value(p, l)),
            });
            return Ok(Outcome::new(0, render(&v)));
        }
        let mut out = format!("indicator multi-utility:\n{}", family_text(&indicator));
        out.push_str(&format!("Richter-Peleg utility:\n{}", family_text(&rp)));
        match (t, lsc) {
            (Some(_), Some(l)) => out.push_str(&format!("lsc multi-utility:\n{}", family_text(&l))),
            (Some(_), None) => out.push_str("lsc multi-utility: none (preorder is not lsc)\n"),
            _ => {}
        }
        return Ok(Outcome::new(0, out));
    }

    let family = doc.family()?.expect("nonempty");
    let name_of = |k: Option<usize>| k.map(|k| provided[k].0.clone());
    let multi = is_multiutility(&family, p)?;
    if let Some(w) = multi.witness() {
        let witness = Witness::PairMisrepresented {
            x: p.label(w.x).to_owned(),
            y: p.label(w.y).to_owned(),
            function: name_of(w.member),
            failure: PairFailure::from(w.failure),
        };
        let msg = format!("not a multi-utility: pair ({}, {}) is misrepresented", p.label(w.x), p.label(w.y));
        return Ok(failure("represent", json, msg, &witness, json!({ "multiutility": false })));
    }
    let rp = is_richter_peleg_multiutility(&family, p)?.holds();
    let mut lsc_failure = None;
    if let Some(t) = t {
        for (name, f) in &provided {
            if let Some(w) = semicontinuity(f, t, SemicontinuityKind::Lower)?.into_witness() {
                lsc_failure = Some(Witness::SublevelNotClosed {
                    function: name.clone(),
                    at: p.label(w.at).to_owned(),
                    set: p.set_labels(w.set),
                    topology: opens_labels(p, t),
                });
                break;
            }
        }
    }
    let lsc = t.map(|_| lsc_failure.is_none());
    if json {
        let v = json!({
            "command": "represent",
            "multiutility": true,
            "richter_peleg": rp,
            "lower_semicontinuous": lsc,
            "lsc_witness": lsc_failure.as_ref().map(witness_value),
        });
        return Ok(Outcome::new(0, render(&v)));
    }
    let mut out = format!("multi-utility: yes\nRichter-Peleg: {}\n", if rp { "yes" } else { "no" });
    match (lsc, &lsc_failure) {
        (Some(true), _) => out.push_str("lower semicontinuous: yes\n"),
        (Some(false), Some(w)) => out.push_str(&format!(
            "lower semicontinuous: no\nwitness: {}\n",
            serde_json::to_string(w).expect("serializable")
        )),
        _ => {}
    }
    Ok(Outcome::new(0, out))
}

fn decide_rp(p: &Preorder, t: &Topology, json: bool) -> Result<Outcome> {
    match construct_finite_lsc_rp_multiutility(p, t)? {
        LscRpResult::Family(f) => {
            let fs = named("g", p, f.members());
            if json {
                let v = json!({ "command": "decide-rp", "result": "family", "family": family_value(p, &fs) });
                return Ok(Outcome::new(0, render(&v)));
            }
            Ok(Outcome::new(0, format!("Family of {} functions:\n{}", fs.len(), family_text(&fs))))
        }
        LscRpResult::Obstruction(a) => {
            let w = contour_witness(p, t, a)?;
            let msg = format!("Obstruction: weak lower contour of {} is not closed", p.label(a));
            let fields = json!({ "result": "obstruction", "element": p.label(a) });
            Ok(failure("decide-rp", json, msg, &w, fields))
        }
    }
}

fn summary_outcome(command: &str, summary: &Summary, json: bool, mut extra: Value) -> Outcome {
    let violations = summary.violation_count();
    let code = if violations == 0 { 0 } else { 1 };
    let first: Option<&Violation> = summary.reports.iter().flat_map(|r| r.violations.iter()).next();
    let witness = first.map(|v| Witness::TheoremViolation { violation: v.clone() });
    if json {
        extra["command"] = json!(command);
        extra["violations"] = json!(violations);
        extra["reports"] = serde_json::to_value(&summary.reports).expect("serializable");
        if let Some(w) = &witness {
            extra["witness"] = witness_value(w);
        }
        return Outcome::new(code, render(&extra));
    }
    let mut out = String::new();
    for r in &summary.reports {
        let id = serde_json::to_value(r.theorem).expect("serializable");
        out.push_str(&format!(
            "{:<24} checked {:>7}  non-vacuous {:>7}  vacuous {:>7}  violations {}  ({:.2?})\n",
            id.as_str().unwrap_or_default(),
            r.instances_checked,
            r.premise_held,
            r.premise_failed,
            r.violations.len(),
            r.elapsed
        ));
    }
    out.push_str(&format!("total violations: {violations}\n"));
    if let Some(w) = witness {
        out.push_str(&format!("witness: {}\n", serde_json::to_string(&w).expect("serializable")));
    }
    Outcome::new(code, out)
}

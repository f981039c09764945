//! Command-line front end. `run` returns the process exit code:
//! 0 when the checked property holds, 1 when a check fails, 2 on input or budget errors.

pub mod repfile;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{builtin_example, builtin_names, builtin_source, FIXTURES};
use crate::cpr::{cpr_emit, cpr_to_rep, rep_to_cpr, CprGraph};
use crate::error::{Error, Result};
use crate::perm::{ElementBudget, DEFAULT_SEED};
use crate::rankred::{
    guaranteed_run_length, reduce_iterate, reduce_once, Direction, ReduceOptions, ReductionChain,
    ReductionOutcome, RunVariant, StopReason,
};
use crate::sggi::{verify, Engine, Method, SggiRep, VerificationReport, VerifyOptions};
use repfile::{emit_rep, emit_rep_file, matrix_text, parse_rep_file, RepFile};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "stringc", version, about = "Verify and rank-reduce string C-group representations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the sggi conditions and the intersection property.
    Verify {
        /// Representation file, or a built-in example name.
        path: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Apply rank reduction once, or iterate it down to a target rank.
    Reduce {
        path: String,
        #[arg(long, value_enum, default_value_t = DirectionArg::Left)]
        direction: DirectionArg,
        #[arg(long)]
        iterate: bool,
        #[arg(long, default_value_t = 3)]
        target_rank: usize,
        /// Verify every reduced representation (always done for a single step).
        #[arg(long)]
        verify_each: bool,
        /// Reduce inputs that are not verified irreducible string C-groups.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        /// Write each reduced representation into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Work with CPR graphs.
    Cpr {
        #[command(subcommand)]
        action: CprAction,
    },
    /// List or print the built-in examples.
    Example {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Subcommand, Debug)]
enum CprAction {
    /// Validate a CPR file and print its canonical form.
    Parse { path: String },
    /// Connected components for label subsets (all labels, and each label left out).
    Analyze {
        path: String,
        /// Comma-separated labels to analyze instead of the default subsets.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the permutation representation encoded by a CPR graph.
    ToRep { path: String },
    /// Print the CPR graph of a permutation representation of involutions.
    FromRep { path: String },
}

#[derive(Subcommand, Debug)]
enum ExampleAction {
    List,
    Emit { name: String },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Cap on explicitly enumerated elements.
    #[arg(long, default_value_t = ElementBudget::DEFAULT_MAX)]
    budget: u64,
    /// Seed for the randomized phase of Schreier–Sims.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Recursive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Recursive => Method::Recursive,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Left,
    Right,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Left => Direction::Left,
            DirectionArg::Right => Direction::Right,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify { path, method, common } => cmd_verify(&path, method.into(), &common, out),
        Command::Reduce {
            path,
            direction,
            iterate,
            target_rank,
            verify_each,
            force,
            method,
            out_dir,
            common,
        } => {
            let opts = ReduceOptions {
                verify: verify_options(method.into(), &common)?,
                force,
            };
            let rep = load(&path, budget(&common)?)?.into_rep();
            if iterate {
                cmd_reduce_iterate(&path, &rep, direction.into(), target_rank, verify_each, &opts, out_dir.as_deref(), common.format, out)
            } else {
                cmd_reduce_once(&path, &rep, direction.into(), &opts, out_dir.as_deref(), common.format, out)
            }
        }
        Command::Cpr { action } => cmd_cpr(action, out),
        Command::Example { action } => cmd_example(action, out),
    }
}

fn budget(common: &Common) -> Result<ElementBudget> {
    ElementBudget::new(common.budget)
}

fn verify_options(method: Method, common: &Common) -> Result<VerifyOptions> {
    Ok(VerifyOptions {
        method,
        budget: budget(common)?,
        seed: common.seed,
    })
}

/// Reads a file, or falls back to a built-in example name.
pub fn load(path: &str, budget: ElementBudget) -> Result<RepFile> {
    let p = Path::new(path);
    if p.is_file() {
        let text = std::fs::read_to_string(p)?;
        return parse_rep_file(&text, budget);
    }
    if let Some(text) = builtin_source(path) {
        return parse_rep_file(text, budget);
    }
    if path.starts_with("simplex:") {
        return Ok(RepFile::Rep(builtin_example(path)?));
    }
    Err(Error::Invalid(format!(
        "{path:?} is neither a readable file nor a built-in example ({})",
        builtin_names().join(", ")
    )))
}

fn generator_strings(rep: &SggiRep) -> Vec<String> {
    match rep.engine() {
        Engine::Permutation => rep.generators().iter().map(|g| g.to_cycle_string()).collect(),
        Engine::Matrix(me) => me.gens.iter().map(|m| matrix_text(m, &me.field)).collect(),
    }
}

fn rep_json(rep: &SggiRep) -> Value {
    json!({
        "label": rep.label(),
        "engine": rep.engine().name(),
        "degree": rep.degree(),
        "rank": rep.rank(),
        "generators": generator_strings(rep),
    })
}

fn write_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_verify(path: &str, method: Method, common: &Common, out: &mut dyn Write) -> Result<i32> {
    let opts = verify_options(method, common)?;
    let rep = load(path, opts.budget)?.into_rep();
    let report = verify(&rep, &opts)?;
    let code = if report.is_string_c_group { 0 } else { 1 };
    match common.format {
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA_VERSION,
                "command": "verify",
                "source": path,
                "representation": rep_json(&rep),
                "report": to_value(&report),
                "run_length": run_lengths(&report),
            }),
        )?,
        Format::Text => {
            writeln!(out, "source: {path}")?;
            write_rep_text(out, &rep)?;
            write_report_text(out, &report, "")?;
            if let Some(rl) = run_lengths(&report).as_object() {
                for (k, v) in rl {
                    writeln!(out, "run length ({k}): {v}")?;
                }
            }
        }
    }
    Ok(code)
}

fn run_lengths(report: &VerificationReport) -> Value {
    if report.schlafli.len() < 3 || !report.is_sggi {
        return Value::Null;
    }
    json!({
        "paper": guaranteed_run_length(&report.schlafli, RunVariant::Paper).ok().flatten(),
        "shifted": guaranteed_run_length(&report.schlafli, RunVariant::Shifted).ok().flatten(),
    })
}

fn write_rep_text(out: &mut dyn Write, rep: &SggiRep) -> Result<()> {
    if let Some(l) = rep.label() {
        writeln!(out, "label: {l}")?;
    }
    writeln!(out, "engine: {}", rep.engine().name())?;
    writeln!(out, "degree: {}", rep.degree())?;
    writeln!(out, "rank: {}", rep.rank())?;
    for (i, g) in generator_strings(rep).iter().enumerate() {
        writeln!(out, "rho{i}: {g}")?;
    }
    Ok(())
}

fn write_report_text(out: &mut dyn Write, r: &VerificationReport, indent: &str) -> Result<()> {
    writeln!(out, "{indent}is_sggi: {}", r.is_sggi)?;
    writeln!(out, "{indent}schlafli: {}", r.schlafli)?;
    writeln!(out, "{indent}is_irreducible: {}", r.is_irreducible)?;
    if let Some(m) = r.method {
        writeln!(out, "{indent}method: {}", to_value(&m).as_str().unwrap_or_default())?;
    }
    if let Some(o) = &r.group_order {
        writeln!(out, "{indent}group_order: {o}")?;
    }
    writeln!(out, "{indent}is_string_c_group: {}", r.is_string_c_group)?;
    writeln!(out, "{indent}pair_order_table:")?;
    for row in &r.pair_order_table {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{indent}  {}", cells.join(" "))?;
    }
    if let Some(w) = &r.failure_witness {
        writeln!(out, "{indent}failure_witness: {w}")?;
    }
    Ok(())
}

fn write_outcome_text(out: &mut dyn Write, o: &ReductionOutcome) -> Result<()> {
    writeln!(out, "  direction: {}", o.direction)?;
    writeln!(out, "  rank: {} -> {}", o.input_rank, o.reduced.rank())?;
    writeln!(out, "  schlafli: {} -> {}", o.input_schlafli, o.reduced_schlafli)?;
    writeln!(out, "  theorem_condition: {}", o.theorem_condition)?;
    writeln!(out, "  odd_condition: {}", o.odd_condition)?;
    writeln!(out, "  group_preserved: {} ({} vs {})", o.group_preserved, o.input_order, o.reduced_order)?;
    writeln!(out, "  guaranteed: {}", o.guaranteed)?;
    writeln!(out, "  input_verified: {}", o.input_verified)?;
    let orbits = o.reduced.group().orbits();
    writeln!(out, "  reduced_orbits: {}", orbits.len())?;
    for (i, g) in generator_strings(&o.reduced).iter().enumerate() {
        writeln!(out, "  rho{i}: {g}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct StepJson<'a> {
    #[serde(flatten)]
    outcome: &'a ReductionOutcome,
    reduced: Value,
    reduced_orbit_count: usize,
    verification: Option<&'a VerificationReport>,
}

fn step_json<'a>(outcome: &'a ReductionOutcome, verification: Option<&'a VerificationReport>) -> Value {
    to_value(&StepJson {
        outcome,
        reduced: rep_json(&outcome.reduced),
        reduced_orbit_count: outcome.reduced.group().orbits().len(),
        verification,
    })
}

fn write_out_file(dir: Option<&Path>, path: &str, rep: &SggiRep) -> Result<Option<PathBuf>> {
    let Some(dir) = dir else { return Ok(None) };
    std::fs::create_dir_all(dir)?;
    let stem = Path::new(path)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("rep")
        .replace(':', "-");
    let file = dir.join(format!("{stem}-rank{}.rep", rep.rank()));
    std::fs::write(&file, emit_rep(rep))?;
    Ok(Some(file))
}

fn cmd_reduce_once(
    path: &str,
    rep: &SggiRep,
    direction: Direction,
    opts: &ReduceOptions,
    out_dir: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let outcome = reduce_once(rep, direction, opts)?;
    let verification = if outcome.group_preserved {
        Some(verify(&outcome.reduced, &opts.verify)?)
    } else {
        None
    };
    let accepted = outcome.group_preserved && verification.as_ref().is_some_and(|v| v.is_string_c_group);
    let stop = if !outcome.group_preserved {
        StopReason::GroupNotPreserved
    } else if !accepted {
        StopReason::VerificationFailed
    } else {
        StopReason::TargetReached
    };
    let written = if accepted {
        write_out_file(out_dir, path, &outcome.reduced)?
    } else {
        None
    };
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA_VERSION,
                "command": "reduce",
                "source": path,
                "start": rep_json(rep),
                "steps": if accepted { vec![step_json(&outcome, verification.as_ref())] } else { vec![] },
                "rejected": if accepted { Value::Null } else { step_json(&outcome, verification.as_ref()) },
                "stop": to_value(&stop),
                "written": written.map(|p| p.display().to_string()),
            }),
        )?,
        Format::Text => {
            writeln!(out, "source: {path}")?;
            writeln!(out, "start: rank {} {}", rep.rank(), outcome.input_schlafli)?;
            writeln!(out, "{} step:", if accepted { "accepted" } else { "rejected" })?;
            write_outcome_text(out, &outcome)?;
            if let Some(v) = &verification {
                writeln!(out, "  verification:")?;
                write_report_text(out, v, "    ")?;
            }
            writeln!(out, "stop: {stop}")?;
            if let Some(p) = written {
                writeln!(out, "written: {}", p.display())?;
            }
        }
    }
    Ok(if accepted { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce_iterate(
    path: &str,
    rep: &SggiRep,
    direction: Direction,
    target: usize,
    verify_each: bool,
    opts: &ReduceOptions,
    out_dir: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let chain = if rep.rank() == target && target >= 3 {
        ReductionChain::unreduced(rep.clone())
    } else {
        reduce_iterate(rep, target, direction, verify_each, opts)?
    };
    let mut written = Vec::new();
    for s in &chain.steps {
        if let Some(p) = write_out_file(out_dir, path, &s.outcome.reduced)? {
            written.push(p.display().to_string());
        }
    }
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA_VERSION,
                "command": "reduce",
                "source": path,
                "start": rep_json(rep),
                "ranks": chain.ranks(),
                "steps": chain.steps.iter().map(|s| step_json(&s.outcome, s.verification.as_ref())).collect::<Vec<_>>(),
                "rejected": chain.rejected.as_ref().map(|s| step_json(&s.outcome, s.verification.as_ref())),
                "stop": to_value(&chain.stop),
                "written": written,
            }),
        )?,
        Format::Text => {
            writeln!(out, "source: {path}")?;
            let ranks: Vec<String> = chain.ranks().iter().map(|r| r.to_string()).collect();
            writeln!(out, "ranks: {}", ranks.join(" -> "))?;
            for (i, s) in chain.steps.iter().enumerate() {
                writeln!(out, "step {}:", i + 1)?;
                write_outcome_text(out, &s.outcome)?;
                if let Some(v) = &s.verification {
                    writeln!(out, "  verified: {}", v.is_string_c_group)?;
                }
            }
            if let Some(s) = &chain.rejected {
                writeln!(out, "rejected step:")?;
                write_outcome_text(out, &s.outcome)?;
                if let Some(v) = &s.verification {
                    writeln!(out, "  verified: {}", v.is_string_c_group)?;
                }
            }
            writeln!(out, "stop: {}", chain.stop)?;
            for p in &written {
                writeln!(out, "written: {p}")?;
            }
        }
    }
    Ok(if chain.stop == StopReason::TargetReached { 0 } else { 1 })
}

fn load_cpr(path: &str) -> Result<CprGraph> {
    match load(path, ElementBudget::default())? {
        RepFile::Cpr(g) => Ok(g),
        other => Err(Error::Invalid(format!("{path:?} is a {} file, expected cpr", other.kind()))),
    }
}

fn cmd_cpr(action: CprAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        CprAction::Parse { path } => {
            write!(out, "{}", cpr_emit(&load_cpr(&path)?))?;
            Ok(0)
        }
        CprAction::ToRep { path } => {
            write!(out, "{}", emit_rep(&cpr_to_rep(&load_cpr(&path)?)))?;
            Ok(0)
        }
        CprAction::FromRep { path } => {
            let rep = load(&path, ElementBudget::default())?.into_rep();
            if !matches!(rep.engine(), Engine::Permutation) {
                return Err(Error::Invalid("CPR graphs need a permutation representation".into()));
            }
            write!(out, "{}", cpr_emit(&rep_to_cpr(&rep)?))?;
            Ok(0)
        }
        CprAction::Analyze { path, labels, format } => {
            let g = load_cpr(&path)?;
            let n = g.rank();
            let subsets: Vec<Vec<usize>> = match labels {
                Some(l) => vec![l],
                None => std::iter::once((0..n).collect())
                    .chain((0..n).map(|skip| (0..n).filter(|&l| l != skip).collect()))
                    .collect(),
            };
            let mut rows = Vec::new();
            for s in &subsets {
                let comps = g.connectivity(s)?;
                rows.push(json!({
                    "labels": s,
                    "components": comps,
                    "connected": comps.len() == 1,
                }));
            }
            match format {
                Format::Json => write_json(
                    out,
                    &json!({
                        "schema": SCHEMA_VERSION,
                        "command": "cpr analyze",
                        "source": path,
                        "nodes": g.nodes(),
                        "rank": n,
                        "edges": g.edges().len(),
                        "subsets": rows,
                    }),
                )?,
                Format::Text => {
                    writeln!(out, "nodes: {} rank: {} edges: {}", g.nodes(), n, g.edges().len())?;
                    for r in &rows {
                        writeln!(
                            out,
                            "labels {}: {} component(s){} {}",
                            r["labels"],
                            r["components"].as_array().map_or(0, |a| a.len()),
                            if r["connected"] == true { " (connected)" } else { "" },
                            r["components"]
                        )?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn cmd_example(action: ExampleAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        ExampleAction::List => {
            for (name, text) in FIXTURES {
                let kind = text
                    .lines()
                    .find_map(|l| l.strip_prefix("kind:"))
                    .map(str::trim)
                    .unwrap_or("?");
                writeln!(out, "{name}\t{kind}")?;
            }
            writeln!(out, "simplex:<m>\tpermutation")?;
            Ok(0)
        }
        ExampleAction::Emit { name } => {
            let file = load(&name, ElementBudget::default())?;
            write!(out, "{}", emit_rep_file(&file))?;
            Ok(0)
        }
    }
}

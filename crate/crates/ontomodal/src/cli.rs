//! The `ontomodal` command line.
//!
//! Reports are `key: value` lines on standard output. Exit status is 0 for
//! a positive verdict, 1 for a negative one and 2 for usage or input errors.

use crate::collapse::collapse_report;
use crate::model_text::{parse_model, render_model};
use crate::script::{parse_script, render_script, Script};
use crate::shipped;
use crate::system_text::render_system;
use anyhow::{anyhow, bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ontomodal_core::formula::{parse, render, Formula};
use ontomodal_core::kernel::check_proof;
use ontomodal_core::kripke::{
    bruteforce_validity, elimination_sat, eval, small_model_bound, Assignment, BruteVerdict, ModalSystem,
    MAX_ENUM_WORLDS,
};
use ontomodal_core::ontology::system_by_name;
use ontomodal_core::tableau::{decide_sat, TableauStats, Verdict};
use ontomodal_core::temporal::{replay_transformed, transform_system, Transformation};
use std::fmt::Write as _;
use std::io::Read as _;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Compact,
    Full,
}

#[derive(Parser, Debug)]
#[command(name = "ontomodal", version, about = "Modal and temporal logic toolkit")]
struct Cli {
    /// Report detail.
    #[arg(long, value_enum, global = true, default_value_t)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse one formula per line and print canonical renderings.
    Parse { file: String },
    /// Decide validity with the tableau.
    Valid(Decide),
    /// Decide satisfiability with the tableau.
    Sat(Decide),
    /// Evaluate a formula at a world of a model file.
    Eval {
        #[arg(long)]
        model: String,
        #[arg(long)]
        world: String,
        formula: String,
    },
    /// Check a proof script.
    CheckProof {
        /// Overrides the script's own `system` line.
        #[arg(long)]
        system: Option<String>,
        script: String,
    },
    /// Apply a transformation to a formula, a system or a proof.
    Transform(TransformArgs),
    /// The shipped derivations.
    Ontology {
        #[command(subcommand)]
        action: OntologyAction,
    },
}

#[derive(Args, Debug)]
struct Decide {
    #[arg(long)]
    system: ModalSystem,
    /// Cross-check against exhaustive enumeration or filtration.
    #[arg(long)]
    oracle: bool,
    formula: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["formula", "system", "proof"])))]
struct TransformArgs {
    #[arg(long)]
    op: Transformation,
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    system: Option<String>,
    #[arg(long, requires = "into")]
    proof: Option<String>,
    /// Target system for a transformed proof.
    #[arg(long)]
    into: Option<String>,
}

#[derive(Subcommand, Debug)]
enum OntologyAction {
    /// Check every shipped script and print a table.
    RunAll,
    /// Print a shipped script.
    Show { name: String },
    /// The modal collapse report.
    Collapse,
}

/// Runs one invocation; `argv` excludes the program name.
pub fn execute<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("ontomodal".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                CommandResult { status, stdout: text, stderr: String::new() }
            } else {
                CommandResult { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(status) => CommandResult { status, stdout: out, stderr: String::new() },
        Err(e) => CommandResult { status: 2, stdout: out, stderr: format!("error: {e:#}\n") },
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn formula_arg(arg: &str) -> anyhow::Result<Formula> {
    let text = if arg == "-" { read_input("-")? } else { arg.to_string() };
    parse(text.trim()).map_err(|e| anyhow!("{e}"))
}

fn script_arg(path: &str) -> anyhow::Result<Script> {
    parse_script(&read_input(path)?).with_context(|| format!("in {path}"))
}

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key}: {value}").unwrap();
}

fn block(out: &mut String, key: &str, text: &str) {
    writeln!(out, "{key}:").unwrap();
    for line in text.lines() {
        writeln!(out, "  {line}").unwrap();
    }
}

fn stats(out: &mut String, s: &TableauStats) {
    kv(out, "nodes-expanded", s.nodes_expanded);
    kv(out, "worlds-created", s.worlds_created);
}

/// Satisfiability of `f` according to the oracle: enumeration when the
/// small-model bound is within reach, filtration otherwise.
fn oracle_sat(f: &Formula, sys: ModalSystem) -> anyhow::Result<(bool, String)> {
    match small_model_bound(f, sys) {
        Some(n) if n <= MAX_ENUM_WORLDS => {
            let v = bruteforce_validity(&Formula::not(f.clone()), sys.frame_class(), n).map_err(|e| anyhow!("{e}"))?;
            Ok((matches!(v, BruteVerdict::Countermodel(..)), format!("enumeration up to {n} worlds")))
        }
        _ => Ok((elimination_sat(f, sys).map_err(|e| anyhow!("{e}"))?, "elimination".to_string())),
    }
}

fn decide(d: &Decide, valid: bool, format: Format, out: &mut String) -> anyhow::Result<i32> {
    let f = formula_arg(&d.formula)?;
    let target = if valid { Formula::not(f.clone()) } else { f.clone() };
    let r = decide_sat(&target, d.system).map_err(|e| anyhow!("{e}"))?;
    let sat = r.verdict == Verdict::Sat;
    kv(out, "command", if valid { "valid" } else { "sat" });
    kv(out, "system", d.system);
    kv(out, "formula", render(&f));
    let verdict = match (valid, sat) {
        (true, false) => "Valid",
        (true, true) => "Countermodel",
        (false, true) => "SAT",
        (false, false) => "UNSAT",
    };
    kv(out, "verdict", verdict);
    if let Some(m) = &r.model {
        kv(out, "model-worlds", m.len());
    }
    let mut status = if sat != valid { 0 } else { 1 };
    if d.oracle {
        let (osat, how) = oracle_sat(&target, d.system)?;
        kv(out, "oracle", how);
        kv(out, "oracle-agrees", if osat == sat { "yes" } else { "no" });
        if osat != sat {
            status = 1;
        }
    }
    if format == Format::Full {
        stats(out, &r.stats);
        if let Some(m) = &r.model {
            block(out, "model", &render_model(m));
        }
    }
    Ok(status)
}

fn run(cli: &Cli, out: &mut String) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Parse { file } => {
            let text = read_input(file)?;
            let mut bad = 0;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                match parse(line) {
                    Ok(f) => {
                        kv(out, "formula", render(&f));
                        if cli.format == Format::Full {
                            kv(out, "size", f.size());
                            kv(out, "modal-depth", f.modal_depth());
                        }
                    }
                    Err(e) => {
                        bad += 1;
                        kv(out, "error", format!("line {}: {e}", i + 1));
                    }
                }
            }
            Ok(if bad == 0 { 0 } else { 2 })
        }
        Command::Valid(d) => decide(d, true, cli.format, out),
        Command::Sat(d) => decide(d, false, cli.format, out),
        Command::Eval { model, world, formula } => {
            let m = parse_model(&read_input(model)?)?;
            let w = m.world(world).ok_or_else(|| anyhow!("model has no world `{world}`"))?;
            let f = formula_arg(formula)?;
            let v = eval(&m, w, &f, &Assignment::default()).map_err(|e| anyhow!("{e}"))?;
            kv(out, "command", "eval");
            kv(out, "world", world);
            kv(out, "formula", render(&f));
            kv(out, "verdict", v);
            Ok(if v { 0 } else { 1 })
        }
        Command::CheckProof { system, script } => {
            let s = script_arg(script)?;
            let name = system.as_deref().unwrap_or(&s.system);
            let sys = system_by_name(name)?;
            let report = check_proof(&sys, &s.proof, &s.goal, &s.premise_map());
            kv(out, "command", "check-proof");
            kv(out, "system", name);
            kv(out, "goal", render(&s.goal));
            kv(out, "verdict", report.verdict);
            if let Some(fl) = &report.failure {
                kv(out, "failed-step", fl.step);
                kv(out, "reason", fl.reason);
                if cli.format == Format::Full {
                    kv(out, "detail", &fl.detail);
                }
            }
            let used: Vec<&str> = report.premises_used.iter().map(String::as_str).collect();
            kv(out, "premises-used", if used.is_empty() { "none".to_string() } else { used.join(",") });
            kv(out, "goal-matched", if report.goal_matched { "yes" } else { "no" });
            if cli.format == Format::Full {
                kv(out, "steps", s.proof.steps.len());
            }
            Ok(if report.accepted() { 0 } else { 1 })
        }
        Command::Transform(t) => transform(t, out),
        Command::Ontology { action } => match action {
            OntologyAction::RunAll => run_all(cli.format, out),
            OntologyAction::Show { name } => {
                let (_, s) = shipped::by_name(name).ok_or_else(|| anyhow!("no shipped script `{name}`"))?;
                out.push_str(&render_script(&s));
                Ok(0)
            }
            OntologyAction::Collapse => {
                out.push_str(&collapse_report());
                Ok(0)
            }
        },
    }
}

fn transform(t: &TransformArgs, out: &mut String) -> anyhow::Result<i32> {
    if let Some(f) = &t.formula {
        writeln!(out, "{}", render(&t.op.apply(&formula_arg(f)?))).unwrap();
        return Ok(0);
    }
    if let Some(name) = &t.system {
        out.push_str(&render_system(&transform_system(&system_by_name(name)?, t.op)));
        return Ok(0);
    }
    let (Some(path), Some(into)) = (&t.proof, &t.into) else { bail!("--proof needs --into") };
    let src = script_arg(path)?;
    let target = system_by_name(into)?;
    let r = replay_transformed(&src.proof, &src.premise_map(), t.op, &target);
    writeln!(out, "# {} of {path} replayed in {into}: {}", t.op, r.report.verdict).unwrap();
    if let Some(fl) = &r.report.failure {
        writeln!(out, "# step {} {}: {}", fl.step, fl.reason, fl.detail).unwrap();
    }
    let premises = src.premises.iter().map(|(n, _)| (n.clone(), r.premises[n].clone())).collect();
    let script = Script { system: into.clone(), goal: r.goal, premises, proof: r.proof };
    out.push_str(&render_script(&script));
    Ok(if r.report.accepted() { 0 } else { 1 })
}

fn run_all(format: Format, out: &mut String) -> anyhow::Result<i32> {
    let rows = shipped::run_all();
    let width = rows.iter().map(|r| r.entry.name.len()).max().unwrap_or(0);
    let sys_width = rows.iter().map(|r| r.entry.system.len()).max().unwrap_or(0);
    writeln!(out, "{:width$}  {:sys_width$}  verdict  premises-used        goal", "script", "system").unwrap();
    for r in &rows {
        let used: Vec<&str> = r.report.premises_used.iter().map(String::as_str).collect();
        let used = if used.is_empty() { "-".to_string() } else { used.join(",") };
        writeln!(
            out,
            "{:width$}  {:sys_width$}  {:7}  {:19}  {}",
            r.entry.name,
            r.entry.system,
            r.report.verdict.to_string(),
            used,
            r.entry.goal
        )
        .unwrap();
        if format == Format::Full {
            if let Some(fl) = &r.report.failure {
                writeln!(out, "  failure: step {} {}: {}", fl.step, fl.reason, fl.detail).unwrap();
            }
        }
    }
    let accepted = rows.iter().filter(|r| r.report.accepted()).count();
    let expected = rows.iter().filter(|r| r.as_expected).count();
    kv(out, "scripts", rows.len());
    kv(out, "accepted", accepted);
    kv(out, "as-expected", expected);
    Ok(if expected == rows.len() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        execute(args.iter().copied())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&[]).status, 2);
        assert_eq!(run(&["valid", "--system", "Q", "p"]).status, 2);
        assert_eq!(run(&["transform", "--op", "temporalize"]).status, 2);
        assert_eq!(run(&["transform", "--op", "sideways", "--formula", "p"]).status, 2);
        assert_eq!(run(&["sat", "--system", "K", "p &"]).status, 2);
        assert_eq!(run(&["--help"]).status, 0);
    }

    #[test]
    fn decide_exit_codes() {
        let r = run(&["valid", "--system", "S5", "<>[]p -> []p"]);
        assert_eq!(r.status, 0);
        assert!(r.stdout.contains("verdict: Valid"));
        let r = run(&["sat", "--system", "T", "p & ~p"]);
        assert_eq!(r.status, 1);
        assert!(r.stdout.contains("verdict: UNSAT"));
        let r = run(&["valid", "--system", "T", "--oracle", "--format", "full", "p -> []p"]);
        assert_eq!(r.status, 1);
        assert!(r.stdout.contains("oracle-agrees: yes"));
        assert!(r.stdout.contains("model:\n  worlds:"));
    }

    #[test]
    fn transform_formula() {
        let r = run(&["transform", "--op", "temporalize", "--formula", "ex x. G(x)"]);
        assert_eq!(r.stdout.trim(), "(E- ex x. G(x)) & (E+ ex x. G(x))");
    }

    #[test]
    fn deterministic() {
        let a = run(&["ontology", "run-all", "--format", "full"]);
        let b = run(&["ontology", "run-all", "--format", "full"]);
        assert_eq!(a, b);
    }
}

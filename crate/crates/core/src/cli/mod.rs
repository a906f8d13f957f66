//! Command-line front end.

pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::configuration::{emit_clauses, Instance};
use crate::error::{Error, Result};
use crate::lemmata::{
    enumerate_uniqueness, figure_instance, instance_rules, run_script, verify_all, write_bundle,
    Figure, Options, Report, ScriptId,
};
use crate::solver::{brute_force, solve, Outcome};
use crate::tilings::{validate_pattern, PeriodicColoring};

#[derive(Parser, Debug)]
#[command(
    name = "ellfive",
    version,
    about = "Exact verification that red/blue plane colourings contain a red unit pair or a blue ℓ5"
)]
pub struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run proof scripts.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Compare the solver with exhaustive search on an instance file.
    Oracle { instance: PathBuf },
    /// Write the CNF of every solver query of a script.
    ExportCnf {
        id: ScriptId,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[arg(long, default_value_t = 7)]
        patch_radius: i64,
    },
    /// Render a figure or a pattern patch as SVG.
    Render {
        name: String,
        #[arg(long, value_name = "PATH")]
        svg: PathBuf,
        #[arg(long, default_value_t = 5)]
        radius: i64,
    },
    /// Periodic colouring checks.
    Coloring {
        #[command(subcommand)]
        action: ColoringAction,
    },
    /// Enumerate central colourings around a forced cluster.
    Enumerate {
        id: ScriptId,
        #[arg(long, default_value_t = 6)]
        radius: i64,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        model_cap: u64,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// One script and its dependencies.
    Lemma {
        id: ScriptId,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Every script.
    All {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Write certificates and a manifest into this directory.
    #[arg(long, value_name = "DIR")]
    certificates: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    patch_radius: i64,
}

#[derive(Subcommand, Debug)]
enum ColoringAction {
    Validate {
        pattern: String,
        #[arg(long, default_value_t = 12)]
        radius: i64,
    },
}

#[derive(Serialize)]
struct OracleReport {
    solve: String,
    brute_force: String,
    model_valid: Option<bool>,
    agree: bool,
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(())
}

fn options(run: &RunArgs) -> Result<Options> {
    if run.patch_radius < 5 {
        return Err(Error::Invalid("--patch-radius must be at least 5".into()));
    }
    Ok(Options {
        patch_radius: run.patch_radius,
        emit_certificates: run.certificates.is_some(),
        ..Options::default()
    })
}

fn print_report(out: &mut dyn Write, report: &Report) -> Result<()> {
    for s in &report.scripts {
        let passed = s.obligations.iter().filter(|o| o.passed).count();
        writeln!(
            out,
            "{:<8} {:<9} {:>3}/{:<3} obligations  {} ms",
            s.id.as_str(),
            format!("{:?}", s.status).to_lowercase(),
            passed,
            s.obligations.len(),
            s.elapsed_ms
        )?;
        if !s.blocked_by.is_empty() {
            let deps: Vec<&str> = s.blocked_by.iter().map(|d| d.as_str()).collect();
            writeln!(out, "         blocked by {}", deps.join(", "))?;
        }
        for o in s.obligations.iter().filter(|o| !o.passed) {
            writeln!(out, "  FAIL {} {}: {}", o.id, o.statement, o.detail)?;
        }
    }
    writeln!(
        out,
        "{}: {} obligations in {} scripts",
        if report.passed { "PASS" } else { "FAIL" },
        report.obligation_count,
        report.scripts.len()
    )?;
    Ok(())
}

fn verify(cli_json: &Option<PathBuf>, target: &VerifyTarget, out: &mut dyn Write) -> Result<i32> {
    let (report, run) = match target {
        VerifyTarget::Lemma { id, run } => (run_script(*id, &options(run)?), run),
        VerifyTarget::All { run } => (verify_all(&options(run)?), run),
    };
    print_report(out, &report)?;
    if let Some(dir) = &run.certificates {
        let manifest = write_bundle(&report, dir)?;
        writeln!(
            out,
            "wrote {} certificates to {}",
            manifest.files.len(),
            dir.display()
        )?;
    }
    if let Some(path) = cli_json {
        fs::write(path, report.to_json())?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn oracle(json: &Option<PathBuf>, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::from_json(&fs::read_to_string(path)?)?;
    let cfg = inst.configuration()?;
    let rules = instance_rules(&inst.rule_ids()?)?;
    let problem = emit_clauses(&cfg, &rules, &inst.fixed)?;
    let verdict = solve(&problem);
    let exhaustive = brute_force(&problem)?;
    let model_valid = match &verdict.outcome {
        Outcome::Sat(m) => Some(problem.satisfied_by(m)),
        Outcome::Unsat => None,
    };
    let name = |sat: bool| if sat { "sat" } else { "unsat" }.to_string();
    let report = OracleReport {
        solve: name(verdict.is_sat()),
        brute_force: name(matches!(exhaustive, Outcome::Sat(_))),
        model_valid,
        agree: verdict.is_sat() == matches!(exhaustive, Outcome::Sat(_))
            && model_valid != Some(false),
    };
    writeln!(
        out,
        "{} variables, {} clauses: solver {}, exhaustive {}{}",
        problem.var_count(),
        problem.all_clauses().len(),
        report.solve,
        report.brute_force,
        if report.agree { "" } else { "  MISMATCH" }
    )?;
    write_json(json, &report)?;
    Ok(if report.agree { 0 } else { 1 })
}

fn export_cnf(id: ScriptId, dir: &Path, patch_radius: i64, out: &mut dyn Write) -> Result<i32> {
    let options = Options {
        patch_radius,
        ..Options::default()
    };
    let report = run_script(id, &options);
    fs::create_dir_all(dir)?;
    let mut count = 0;
    let script = report.script(id).expect("script ran");
    for cert in &script.certificates {
        for (k, q) in cert.queries.iter().enumerate() {
            let stem = format!(
                "{}-{}-{}",
                cert.obligation.replace('/', "-"),
                k + 1,
                q.expect
            );
            fs::write(dir.join(format!("{stem}.cnf")), q.problem().to_dimacs())?;
            let mut varmap = serde_json::to_string_pretty(&q.varmap)?;
            varmap.push('\n');
            fs::write(dir.join(format!("{stem}.varmap.json")), varmap)?;
            count += 1;
        }
    }
    writeln!(out, "wrote {count} CNF files to {}", dir.display())?;
    Ok(if script.passed() { 0 } else { 1 })
}

fn render(name: &str, path: &Path, radius: i64, out: &mut dyn Write) -> Result<i32> {
    let text = match name {
        "patternA" | "patternB" => svg::render_pattern(&PeriodicColoring::by_name(name)?, radius),
        _ => {
            let fig = Figure::from_instance(&figure_instance(name)?)?;
            svg::render_configuration(&fig.cfg, &fig.hypotheses)
        }
    };
    fs::write(path, &text)?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(0)
}

fn coloring(
    json: &Option<PathBuf>,
    pattern: &str,
    radius: i64,
    out: &mut dyn Write,
) -> Result<i32> {
    let p = PeriodicColoring::by_name(pattern)?;
    let r = validate_pattern(&p, radius)?;
    writeln!(
        out,
        "pattern {} radius {}: {} nodes, {} red, {} red unit pairs, {} blue ℓ5: {}",
        r.pattern,
        r.radius,
        r.nodes,
        r.red_nodes,
        r.red_unit_pairs,
        r.blue_l5,
        if r.pass { "pass" } else { "FAIL" }
    )?;
    if let Some(d) = &r.first_defect {
        writeln!(out, "first defect: {d:?}")?;
    }
    write_json(json, &r)?;
    Ok(if r.pass { 0 } else { 1 })
}

fn enumerate(
    json: &Option<PathBuf>,
    id: ScriptId,
    radius: i64,
    cap: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let r = enumerate_uniqueness(id, radius, cap as usize)?;
    writeln!(
        out,
        "{} radius {}: {} central colourings of {} nodes{}, {}",
        r.script,
        r.radius,
        r.projections,
        r.central_nodes,
        if r.cap_hit { " (model cap hit)" } else { "" },
        if r.all_match {
            "all match the pattern"
        } else {
            "MISMATCH"
        }
    )?;
    for m in &r.mismatches {
        writeln!(out, "  {m}")?;
    }
    write_json(json, &r)?;
    Ok(if r.all_match { 0 } else { 1 })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Verify { target } => verify(&cli.json, target, out),
        Command::Oracle { instance } => oracle(&cli.json, instance, out),
        Command::ExportCnf {
            id,
            out: dir,
            patch_radius,
        } => export_cnf(*id, dir, *patch_radius, out),
        Command::Render { name, svg, radius } => render(name, svg, *radius, out),
        Command::Coloring {
            action: ColoringAction::Validate { pattern, radius },
        } => coloring(&cli.json, pattern, *radius, out),
        Command::Enumerate {
            id,
            radius,
            model_cap,
        } => enumerate(&cli.json, *id, *radius, *model_cap, out),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

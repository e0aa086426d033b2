//! `parhopf`: verify example specifications and write JSON reports.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use parhopf::runner::{run_dir, run_file, Command, Exit, RunOptions, RunOutcome};
use parhopf::spec::Overrides;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Subcommand {
    VerifyMhopf,
    VerifyCoaction,
    VerifyAction,
    Dualize,
    Morita,
    Galois,
    All,
}

impl From<Subcommand> for Command {
    fn from(s: Subcommand) -> Command {
        match s {
            Subcommand::VerifyMhopf => Command::VerifyMhopf,
            Subcommand::VerifyCoaction => Command::VerifyCoaction,
            Subcommand::VerifyAction => Command::VerifyAction,
            Subcommand::Dualize => Command::Dualize,
            Subcommand::Morita => Command::Morita,
            Subcommand::Galois => Command::Galois,
            Subcommand::All => Command::All,
        }
    }
}

/// Exact verification of partial (co)actions of multiplier Hopf algebras.
///
/// Exit codes: 0 all checks pass, 1 a check fails, 2 unreadable spec,
/// 3 a hypothesis is refused, 4 an internal cross-check disagrees.
#[derive(Debug, Parser)]
#[command(name = "parhopf", version)]
struct Cli {
    #[arg(value_enum)]
    command: Subcommand,
    /// Spec file, or a directory of `.toml` specs.
    #[arg(long, env = "SPEC")]
    spec: PathBuf,
    /// Report path; stdout when omitted.
    #[arg(long, env = "OUT")]
    out: Option<PathBuf>,
    /// Witness window radius for infinite groups.
    #[arg(long, env = "WINDOW")]
    window: Option<u32>,
    /// `rational` or `gf:<p>`.
    #[arg(long, env = "FIELD")]
    field: Option<String>,
    #[arg(long, env = "JOBS")]
    jobs: Option<usize>,
    /// Drop timing fields from the report.
    #[arg(long)]
    no_timing: bool,
}

fn summary_line(name: &str, o: &RunOutcome) -> String {
    let s = &o.report.summary;
    format!(
        "{name}: exit {} ({} checks, {} pass, {} sample-verified, {} fail)",
        o.exit.code(),
        s.total,
        s.passed,
        s.sample_verified,
        s.failed
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { overrides: Overrides { field: cli.field.clone(), window: cli.window }, jobs: cli.jobs };
    let command = Command::from(cli.command);
    let strip = |o: RunOutcome| if cli.no_timing { RunOutcome { report: o.report.without_timing(), ..o } } else { o };

    let (json, exit) = if cli.spec.is_dir() {
        let runs = match run_dir(&cli.spec, command, &opts) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(Exit::Parse.code() as u8);
            }
        };
        let mut exit = Exit::Ok;
        let mut reports = Vec::new();
        for (path, o) in runs {
            let o = strip(o);
            eprintln!("{}", summary_line(&path.display().to_string(), &o));
            exit = exit.worst(o.exit);
            reports.push(o.report);
        }
        (serde_json::to_string_pretty(&reports).expect("reports serialize"), exit)
    } else {
        let o = strip(run_file(&cli.spec, command, &opts));
        eprintln!("{}", summary_line(&o.report.instance, &o));
        for c in o.report.failures() {
            eprintln!("  FAIL {} [{}]: {}", c.name, c.anchor, c.witness.as_deref().unwrap_or(""));
        }
        for s in &o.report.sections {
            if let Some(id) = s.values.get("refused") {
                eprintln!("  refused: {id} ({})", s.values.get("witness").map(String::as_str).unwrap_or(""));
            }
            if let Some(e) = s.values.get("error") {
                eprintln!("  error: {e}");
            }
        }
        (o.report.to_json(), o.exit)
    };

    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Exit::Parse.code() as u8);
            }
        }
        None => {
            let _ = writeln!(std::io::stdout().lock(), "{json}");
        }
    }
    ExitCode::from(exit.code() as u8)
}

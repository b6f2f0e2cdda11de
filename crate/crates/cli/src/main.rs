use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use derivlab::scenario::{self, Report, RunOptions, Scenario, ScenarioError};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "derivlab", version, about = "Run deformation and cohomology checks described by a scenario file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a scenario, reporting every error found.
    Validate { file: PathBuf },
    /// Run the tasks of a scenario and print a JSON report.
    Run {
        file: PathBuf,
        /// Only run tasks with this name (repeatable).
        #[arg(long = "task", value_name = "T")]
        tasks: Vec<String>,
        /// Candidate budget for tasks that do not set their own.
        #[arg(long, env = "DERIVLAB_BUDGET", value_name = "N")]
        budget: Option<u64>,
        /// Write the report here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Record per-task wall-clock time in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Print a bundled scenario.
    Fixture {
        /// One of z3_gl1_f3, s3_gl2_f5, zl_coprime, ordinary_toy.
        name: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, ScenarioError> {
    match cmd {
        Command::Validate { file } => {
            let s = load(&file)?;
            let summary = serde_json::json!({
                "scenario": s.name(),
                "tasks": s.tasks().iter().map(|t| t.name()).collect::<Vec<_>>(),
                "valid": true,
            });
            println!("{}", serde_json::to_string_pretty(&summary).expect("values serialize"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { file, tasks, budget, out, timings } => {
            let s = load(&file)?;
            let report = scenario::run(&s, &RunOptions { budget, tasks, timings })?;
            emit(&report.to_json(), out.as_deref())?;
            Ok(ExitCode::from(exit_status(&report)))
        }
        Command::Fixture { name, out } => {
            emit(scenario::emit_fixture(&name)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_status(report: &Report) -> u8 {
    if report.any_fail() {
        EXIT_FAIL
    } else {
        0
    }
}

fn load(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|e| ScenarioError::Parse(format!("{}: {e}", path.display())))?;
    Scenario::from_json(&text)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), ScenarioError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| ScenarioError::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

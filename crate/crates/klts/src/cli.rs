//! `klts` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::ScenarioConfig;
use crate::error::{CliError, EXIT_FAILURE};
use crate::{scenario, suite, table};

#[derive(Debug, Parser)]
#[command(name = "klts", version, about = "Verification front end for curvilinear thermoelastic kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seeded property suite and emit a JSON report.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; stdout when absent.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include per-record wall-clock times (breaks byte-determinism).
        #[arg(long)]
        timings: bool,
    },
    /// Named benchmark scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Write a linearization or volume-response table as CSV.
    Table {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioAction {
    /// Run one scenario, writing NAME.csv and NAME.json into --out.
    Run {
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in scenarios.
    List,
}

fn load(path: Option<&Path>) -> Result<ScenarioConfig, CliError> {
    path.map_or_else(|| Ok(ScenarioConfig::default()), ScenarioConfig::load)
}

fn verify(config: Option<&Path>, seed: Option<u64>, json: Option<&Path>, timings: bool) -> Result<u8, CliError> {
    let cfg = load(config)?;
    let seed = cfg.resolve_seed(seed)?;
    let report = suite::thread_pool().install(|| suite::verify(&cfg, seed, timings));
    let text = report.to_json()?;
    match json {
        Some(path) => std::fs::write(path, &text).map_err(CliError::io(path))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::io("<stdout>"))?,
    }
    for r in &report.records {
        let err = r.max_error.map_or_else(|| "n/a".into(), |e| format!("{e:.3e}"));
        eprintln!("{} {:<40} max_error {err:>10}  tol {:.1e}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.tolerance);
        if let Some(e) = &r.error {
            eprintln!("     {e}");
        }
    }
    eprintln!("{}: {} passed, {} failed", report.overall, report.passed, report.failed);
    Ok(if report.all_pass() { 0 } else { EXIT_FAILURE })
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            config,
            seed,
            json,
            timings,
        } => verify(config.as_deref(), seed, json.as_deref(), timings),
        Command::Scenario {
            action: ScenarioAction::List,
        } => {
            for name in scenario::SCENARIOS {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Scenario {
            action: ScenarioAction::Run { name, config, seed, out },
        } => {
            let cfg = load(config.as_deref())?;
            let seed = cfg.resolve_seed(seed)?;
            let summary = scenario::run(&name, &cfg, seed, &out)?;
            for c in &summary.checks {
                let err = c.max_error.map_or_else(|| "n/a".into(), |e| format!("{e:.3e}"));
                eprintln!("{} {:<32} max_error {err:>10}  tol {:.1e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.tolerance);
            }
            Ok(if summary.pass { 0 } else { EXIT_FAILURE })
        }
        Command::Table { config, seed, out } => {
            let cfg = load(config.as_deref())?;
            let rows = table::write(&cfg, seed, &out)?;
            eprintln!("wrote {rows} rows to {}", out.display());
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

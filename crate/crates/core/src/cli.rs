//! Command-line entry point.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::boundstate::{profile_table, solve_parameters};
use crate::error::{Error, Result};
use crate::experiments::{
    drift_summary, persist, run_convergence, run_scenario, run_sweep, RunStatus, ScenarioConfig, ScenarioOutcome,
};
use crate::grid::Grid;
use crate::io::{load_config, read_timeseries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_BREAKDOWN: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "benney",
    version,
    about = "Simulate and verify the nonlocal Benney system on the half-line"
)]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the scenario described by a config file.
    Run {
        config: PathBuf,
        /// Output directory; overrides outputs.dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a config at several viscosities.
    Sweep {
        config: PathBuf,
        /// Strictly decreasing viscosities, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine (dx, dt) jointly and report observed orders.
    Converge {
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for traveling-wave parameters.
    Boundstate {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        sstar: f64,
        #[arg(long, allow_negative_numbers = true)]
        mustar: f64,
        /// Write the profile table (x, r, r', w) as CSV.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        length: f64,
        #[arg(long, default_value_t = 400)]
        cells: usize,
    },
    /// Recompute the drift summary of a series file.
    Check { timeseries: PathBuf },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Format(_) => EXIT_IO,
        Error::Diverged => EXIT_BREAKDOWN,
        _ => EXIT_VALIDATION,
    }
}

fn output_dir(cfg: &ScenarioConfig, out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| cfg.outputs.dir.clone())
        .unwrap_or_else(|| Path::new("out").join(cfg.scenario.name()))
}

fn finish(outcome: &ScenarioOutcome, dir: &Path) -> Result<i32> {
    persist(outcome, dir)?;
    let r = &outcome.report;
    println!(
        "{}",
        serde_json::to_string_pretty(r).map_err(|e| Error::Format(e.to_string()))?
    );
    eprintln!("report written to {}", dir.join("report.json").display());
    Ok(match r.status {
        RunStatus::Completed => EXIT_OK,
        _ => {
            eprintln!("run stopped early at t = {} ({:?})", r.t_reached, r.status);
            EXIT_BREAKDOWN
        }
    })
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Run { config, out } => {
            let cfg = load_config(&config)?;
            let dir = output_dir(&cfg, out);
            finish(&run_scenario(&cfg)?, &dir)
        }
        Command::Sweep { config, eps, out } => {
            let cfg = load_config(&config)?;
            let dir = output_dir(&cfg, out);
            finish(&run_sweep(&cfg, &eps)?, &dir)
        }
        Command::Converge { config, levels, out } => {
            let cfg = load_config(&config)?;
            let dir = output_dir(&cfg, out);
            finish(&run_convergence(&cfg, levels)?, &dir)
        }
        Command::Boundstate {
            a,
            b,
            sstar,
            mustar,
            table,
            length,
            cells,
        } => {
            let bp = solve_parameters(a, b, sstar, mustar)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&bp).map_err(|e| Error::Format(e.to_string()))?
            );
            if let Some(path) = table {
                let g = Grid::new(length, cells)?;
                let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Io(e.into()))?;
                w.write_record(["x", "r", "r_prime", "w"])
                    .map_err(|e| Error::Io(e.into()))?;
                for row in profile_table(&bp, &g) {
                    w.write_record([row.x, row.r, row.r_prime, row.w].map(|x| format!("{x:.16e}")))
                        .map_err(|e| Error::Io(e.into()))?;
                }
                w.flush()?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { timeseries } => {
            let rows = read_timeseries(&timeseries)?;
            let d = drift_summary(&rows)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&d).map_err(|e| Error::Format(e.to_string()))?
            );
            Ok(EXIT_OK)
        }
    }
}

/// Parses `argv` and runs the command; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

//! The `grover` command: table and figure sweeps as CSV, end-to-end search
//! runs, and unknown-match-count trial batches.
//!
//! Exit codes: 0 success, 2 usage or capacity problems, 3 when a run's
//! oracle has no satisfying input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grover_core::bbht::BbhtConfig;
use grover_core::oracles::{self, MarkedSetOracle};
use grover_core::report::{self, RunMode};
use grover_core::{Error, SearchProblem};

const SEED_ENV: &str = "GROVER_SEED";
const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(name = "grover", version, about = "Search simulation and analysis over 1 <= M <= N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the single-iteration performance table (CSV).
    Table1 {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Single-iteration success versus one classical guess over M/N (CSV).
    Fig3 {
        #[arg(long, default_value_t = 100)]
        grid: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Success at the optimal iteration count over M/N (CSV).
    Fig4 {
        #[arg(long, default_value_t = 100)]
        grid: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Known-M and unknown-M iteration-count curves over M/N (CSV).
    Fig5 {
        #[arg(long, default_value_t = 100)]
        grid: u32,
        /// Evaluate on the attainable ratios M/2^n instead of a uniform grid.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one search end to end and report the plan and outcome.
    Run {
        /// DIMACS CNF path, or `explicit:<n>:<i,j,...>` for a marked set.
        #[arg(long)]
        oracle: String,
        #[arg(long, value_enum, default_value_t = Mode::Simulate)]
        mode: Mode,
        /// Iteration count; defaults to the optimal q_G.
        #[arg(long)]
        iterations: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Batch of unknown-match-count searches with per-trial seeds (CSV).
    Bbht {
        /// DIMACS CNF path, or `explicit:<n>:<i,j,...>` for a marked set.
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Growth factor in (1, 4/3]; defaults to 8/7.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_calls: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Simulate,
    Analytic,
}

enum CliError {
    Usage(String),
    NoSolution(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Usage(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
            CliError::NoSolution(message) => {
                eprintln!("{message}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table1 { n_min, n_max, out } => emit(&out, &report::table1_csv(n_min, n_max)?),
        Command::Fig3 { grid, out } => emit(&out, &report::fig3_csv(grid)?),
        Command::Fig4 { grid, out } => emit(&out, &report::fig4_csv(grid)?),
        Command::Fig5 { grid, n, out } => {
            let csv = match n {
                Some(n) => report::fig5_attainable_csv(n)?,
                None => report::fig5_csv(grid)?,
            };
            emit(&out, &csv)
        }
        Command::Run { oracle, mode, iterations, seed } => {
            let problem = load_problem(&oracle)?;
            let mode = match mode {
                Mode::Simulate => RunMode::Simulate,
                Mode::Analytic => RunMode::Analytic,
            };
            let report = report::run_report(&problem, mode, iterations, resolve_seed(seed))
                .map_err(|err| match err {
                    Error::NoMatches => CliError::NoSolution(format!(
                        "no solution: the oracle marks none of the {} inputs",
                        problem.size()
                    )),
                    other => CliError::from(other),
                })?;
            emit(&None, &report.to_string())
        }
        Command::Bbht { oracle, trials, lambda, seed, max_calls, out } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let problem = load_problem(&oracle)?;
            let mut config = BbhtConfig::new(resolve_seed(seed));
            if let Some(lambda) = lambda {
                config = config.with_lambda(lambda)?;
            }
            if let Some(max_calls) = max_calls {
                config = config.with_max_calls(max_calls);
            }
            if problem.match_count() == 0 {
                eprintln!(
                    "warning: the oracle marks nothing; every trial will exhaust its {} calls",
                    config.max_oracle_calls()
                );
            }
            let (csv, _) = report::bbht_csv(&problem, &config, trials);
            emit(&out, &csv)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(SEED_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

/// Loads `explicit:<n>:<comma-separated indices>` or a DIMACS CNF path.
fn load_problem(source: &str) -> Result<SearchProblem, CliError> {
    if let Some(rest) = source.strip_prefix("explicit:") {
        let (n_text, index_text) = rest.split_once(':').ok_or_else(|| {
            CliError::Usage("explicit oracle syntax is `explicit:<n>:<i,j,...>`".into())
        })?;
        let n: u32 = n_text
            .parse()
            .map_err(|_| CliError::Usage(format!("bad qubit count `{n_text}`")))?;
        let indices = index_text
            .split(',')
            .filter(|token| !token.is_empty())
            .map(|token| {
                token
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("bad index `{token}`")))
            })
            .collect::<Result<Vec<u64>, CliError>>()?;
        Ok(MarkedSetOracle::explicit(n, &indices)?.to_problem()?)
    } else {
        let text = fs::read_to_string(source)
            .map_err(|err| CliError::Usage(format!("cannot read `{source}`: {err}")))?;
        Ok(oracles::parse_dimacs(&text)?.to_problem()?)
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|err| CliError::Usage(format!("cannot write `{}`: {err}", path.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(content.as_bytes()) {
                Ok(()) => Ok(()),
                // A closed pipe (e.g. `grover fig5 | head`) is not an error.
                Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(err) => Err(CliError::Usage(format!("cannot write to stdout: {err}"))),
            }
        }
    }
}

//! Command-line front end: configuration, built-in scenarios and the four
//! commands `verify`, `simulate`, `ensemble` and `converge`.

pub mod commands;
pub mod config;
pub mod output;
pub mod scenarios;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::ExperimentConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ACCEPTANCE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;
pub const EXIT_CONFIG: i32 = 64;

pub const SEED_ENV: &str = "STOCHWAVE_SEED";

/// Failure carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(EXIT_CONFIG, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<stochwave_core::Error> for CliError {
    fn from(e: stochwave_core::Error) -> Self {
        let code = if e.is_blowup() {
            EXIT_BLOWUP
        } else {
            EXIT_CONFIG
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::config(format!("i/o: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stochwave",
    version,
    about = "Stochastic travelling-wave experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Simulate,
    Ensemble,
    Converge,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// JSON experiment configuration.
    #[arg(
        long,
        conflicts_with = "scenario",
        required_unless_present = "scenario"
    )]
    pub config: Option<PathBuf>,
    /// Built-in scenario name.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Output directory (overrides the config's `out_dir`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed; takes precedence over the environment and the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for ensembles (default: number of processors).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pathwise residual verdicts for catalog candidates.
    Verify(RunArgs),
    /// Integrate one trajectory and write its snapshots.
    Simulate(RunArgs),
    /// Ensemble statistics of a wave observable.
    Ensemble(RunArgs),
    /// Strong-convergence orders and the explicit stability boundary.
    Converge(RunArgs),
    /// List the built-in scenarios and catalog identifiers.
    List,
}

/// Everything a command needs after flags, environment and config have been
/// merged.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub config: ExperimentConfig,
    pub out_dir: PathBuf,
    pub workers: Option<usize>,
}

fn resolve(args: RunArgs, env_seed: Option<String>) -> Result<Invocation, CliError> {
    let mut config = match (&args.config, &args.scenario) {
        (Some(path), _) => ExperimentConfig::from_file(path)?,
        (None, Some(name)) => scenarios::scenario(name)?,
        (None, None) => {
            return Err(CliError::config(
                "one of --config or --scenario is required",
            ))
        }
    };
    let env_seed = env_seed
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| CliError::config(format!("{SEED_ENV}={s}: {e}")))
        })
        .transpose()?;
    if let Some(seed) = args.seed.or(env_seed) {
        config.seed = seed;
    }
    let out_dir = args
        .out
        .or_else(|| config.out_dir.clone())
        .ok_or_else(|| CliError::config("no output directory: pass --out or set out_dir"))?;
    if args.workers == Some(0) {
        return Err(CliError::config("--workers must be at least 1"));
    }
    config.validate()?;
    Ok(Invocation {
        config,
        out_dir,
        workers: args.workers,
    })
}

fn execute(kind: CommandKind, inv: &Invocation) -> Result<i32, CliError> {
    std::fs::create_dir_all(&inv.out_dir)?;
    // ensembles use the configured pool; everything else runs on one thread
    let threads = match kind {
        CommandKind::Ensemble => inv.workers.unwrap_or(0),
        _ => 1,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    pool.install(|| match kind {
        CommandKind::Verify => commands::cmd_verify(inv),
        CommandKind::Simulate => commands::cmd_simulate(inv),
        CommandKind::Ensemble => commands::cmd_ensemble(inv),
        CommandKind::Converge => commands::cmd_converge(inv),
    })
}

/// Parses `args` (including the program name) and runs the command; returns
/// the process exit code. Messages go to standard output and error.
pub fn run<I, T>(args: I, env_seed: Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (kind, args) = match cli.command {
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Simulate(a) => (CommandKind::Simulate, a),
        Command::Ensemble(a) => (CommandKind::Ensemble, a),
        Command::Converge(a) => (CommandKind::Converge, a),
        Command::List => {
            print!("{}", scenarios::listing());
            return EXIT_OK;
        }
    };
    match resolve(args, env_seed).and_then(|inv| execute(kind, &inv)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

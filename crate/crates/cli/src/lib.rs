//! `timeop` command line: algebra proofs and lattice experiments driven by TOML configs.
//!
//! Exit codes: 0 success, 1 a verification or tolerance failed, 2 config error
//! (nothing is written in that case).

pub mod commands;
pub mod config;
pub mod output;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{load, ConfigError};
use output::{commit, summary_json, Artifacts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "timeop", version, about = "Time-operator algebra proofs and lattice experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// TOML config for the command.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for randomized sweeps; overrides `seed` in the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prove the operator identities and write one ledger per identity.
    VerifyAlgebra(RunArgs),
    /// Evolve a packet and write position and momentum snapshots.
    Evolve(RunArgs),
    /// Run the arrival-time estimators on one scenario.
    Arrival(RunArgs),
    /// Shift the zero of energy and measure what changes.
    PauliShift(RunArgs),
    /// Energy-moment and electromagnetic-moment tensors for a particle file.
    EmMoment(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyAlgebra(_) => "verify-algebra",
            Command::Evolve(_) => "evolve",
            Command::Arrival(_) => "arrival",
            Command::PauliShift(_) => "pauli-shift",
            Command::EmMoment(_) => "em-moment",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::VerifyAlgebra(a)
            | Command::Evolve(a)
            | Command::Arrival(a)
            | Command::PauliShift(a)
            | Command::EmMoment(a) => a,
        }
    }
}

struct Completed {
    artifacts: Artifacts,
    summary: String,
    out_dir: PathBuf,
}

fn out_dir(args: &RunArgs, configured: &Option<PathBuf>, command: &str) -> PathBuf {
    args.out
        .clone()
        .or_else(|| configured.clone())
        .unwrap_or_else(|| PathBuf::from("timeop-out").join(command))
}

fn finish<P: Serialize>(
    command: &str,
    params: &P,
    args: &RunArgs,
    configured: &Option<PathBuf>,
    artifacts: Artifacts,
) -> Completed {
    Completed {
        summary: summary_json(command, params, &artifacts),
        out_dir: out_dir(args, configured, command),
        artifacts,
    }
}

fn execute(command: &Command) -> Result<Completed, ConfigError> {
    let args = command.args();
    let name = command.name();
    let config_dir = args.config.parent().unwrap_or(Path::new(".")).to_path_buf();
    match command {
        Command::VerifyAlgebra(_) => {
            let mut cfg: config::VerifyAlgebraConfig = load(&args.config)?;
            let seed = args.seed.or(cfg.seed).unwrap_or(0);
            cfg.seed = Some(seed);
            let a = commands::algebra::run(&cfg, seed)?;
            Ok(finish(name, &cfg, args, &cfg.output_dir, a))
        }
        Command::Evolve(_) => {
            let cfg: config::EvolveConfig = load(&args.config)?;
            let a = commands::evolve::run(&cfg)?;
            Ok(finish(name, &cfg, args, &cfg.output_dir, a))
        }
        Command::Arrival(_) => {
            let cfg: config::ArrivalConfig = load(&args.config)?;
            let a = commands::arrival::run(&cfg)?;
            Ok(finish(name, &cfg, args, &cfg.output_dir, a))
        }
        Command::PauliShift(_) => {
            let cfg: config::PauliShiftConfig = load(&args.config)?;
            let a = commands::pauli::run(&cfg)?;
            Ok(finish(name, &cfg, args, &cfg.output_dir, a))
        }
        Command::EmMoment(_) => {
            let cfg: config::EmMomentConfig = load(&args.config)?;
            let a = commands::em::run(&cfg, &config_dir)?;
            Ok(finish(name, &cfg, args, &cfg.output_dir, a))
        }
    }
}

/// Runs one command and returns its exit code; diagnostics go to stderr.
pub fn run(cli: &Cli) -> i32 {
    let name = cli.command.name();
    let done = match execute(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("timeop {name}: config error: {e}");
            return EXIT_CONFIG;
        }
    };
    if let Err(e) = commit(&done.out_dir, &done.artifacts, &done.summary) {
        eprintln!("timeop {name}: cannot write {}: {e}", done.out_dir.display());
        return EXIT_CONFIG;
    }
    for note in &done.artifacts.notes {
        eprintln!("note: {note}");
    }
    if done.artifacts.passed() {
        println!("{name}: PASS ({})", done.out_dir.display());
        EXIT_OK
    } else {
        for f in &done.artifacts.failures {
            eprintln!("timeop {name}: FAILED {f}");
        }
        println!("{name}: FAIL ({})", done.out_dir.display());
        EXIT_FAILED
    }
}

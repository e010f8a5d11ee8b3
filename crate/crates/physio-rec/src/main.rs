use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use physio_rec::config::CONFIG_ENV;
use physio_rec::{commands, AppConfig};

#[derive(Parser)]
#[command(name = "physio-rec", version, about = "Physiology-aware tourist activity recommender")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArg {
    /// JSON configuration file; built-in defaults when absent
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the condition vector inferred from a sensor log
    Infer {
        #[arg(long)]
        log: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
        /// Query time, seconds since the Unix epoch
        #[arg(long)]
        now: i64,
    },
    /// Print the recommended category, its scores and the top venues
    Recommend {
        #[arg(long)]
        log: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        now: i64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Write a synthetic trace
    Simulate {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn a weight matrix from a trace
    Train {
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a learned matrix with the planted one on a trace's condition vectors
    Evaluate {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Write the sign-prior weight matrix
    InitWeights {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cmd: Command) -> physio_rec::Result<String> {
    let load = |c: ConfigArg| AppConfig::load(c.config.as_deref());
    match cmd {
        Command::Infer { log, config, now } => commands::infer(&log, &load(config)?, now),
        Command::Recommend {
            log,
            config,
            now,
            k,
        } => commands::recommend(&log, &load(config)?, now, k as usize),
        Command::Simulate { config, out } => commands::simulate(&load(config)?, &out),
        Command::Train { trace, config, out } => commands::train(&trace, &load(config)?, &out),
        Command::Evaluate {
            trace,
            weights,
            config,
        } => commands::evaluate(&trace, &weights, &load(config)?),
        Command::InitWeights { config, out } => commands::init_weights(&load(config)?, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

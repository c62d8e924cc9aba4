use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frog_bounds::bounds::DEFAULT_N_SAMPLES;
use frog_bounds::sim::{DEFAULT_AWAKE_CAP, DEFAULT_HORIZON, DEFAULT_SEED};
use frog_cli::records::Format;
use frog_cli::verify::Level;
use frog_cli::{
    cmd_bound, cmd_scan, cmd_simulate, cmd_verify, CliResult, Output, SimulateArgs, EXIT_USAGE,
};

/// Upper bounds for the frog-model critical probability on homogeneous trees.
#[derive(Debug, Parser)]
#[command(name = "frogbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All bounds for one degree.
    Bound {
        #[arg(long)]
        d: u32,
        /// Comma-separated n at which to report the finite-n bound.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_SAMPLES)]
        n_samples: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One bounds row per degree in a range.
    Scan {
        #[arg(long)]
        d_min: u32,
        #[arg(long)]
        d_max: u32,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_SAMPLES)]
        n_samples: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo survival frequency of the frog model.
    Simulate {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Awake-frog count at which a replica is declared surviving.
        #[arg(long, default_value_t = DEFAULT_AWAKE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the cross-check suite; exits 3 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn output(args: &OutputArgs) -> Output<'_> {
    Output {
        format: args.format,
        path: args.out.as_deref(),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Bound {
            d,
            n_samples,
            output: o,
        } => cmd_bound(d, &n_samples, &output(&o)),
        Command::Scan {
            d_min,
            d_max,
            n_samples,
            output: o,
        } => cmd_scan(d_min, d_max, &n_samples, &output(&o)),
        Command::Simulate {
            d,
            p,
            horizon,
            trials,
            cap,
            seed,
            threads,
            output: o,
        } => {
            let args = SimulateArgs {
                d,
                p,
                horizon,
                trials,
                cap,
                seed,
                threads,
            };
            cmd_simulate(&args, &output(&o))
        }
        Command::Verify {
            level,
            seed,
            output: o,
        } => cmd_verify(level, seed, &output(&o)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frogbound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

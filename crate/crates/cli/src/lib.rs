//! Library side of the `frogbound` binary: subcommand bodies, output records
//! and the verification suite. `main.rs` only parses flags and maps errors to
//! exit codes.

pub mod records;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use frog_bounds::bounds::{bounds_row, bounds_table};
use frog_bounds::sim::{simulate_frog_model, SimConfig};
use frog_bounds::{Degree, Probability};

use records::{write_records, Format, Record};
use verify::Level;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NUMERIC: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
            CliError::Verification { .. } => EXIT_VERIFY,
        }
    }
}

impl From<frog_bounds::Error> for CliError {
    fn from(e: frog_bounds::Error) -> Self {
        use frog_bounds::Error as E;
        match e {
            E::InvalidDegree(_)
            | E::InvalidProbability(_)
            | E::InvalidBranchRatio { .. }
            | E::InvalidArgument(_) => CliError::Usage(e.to_string()),
            E::BracketFailure { .. } | E::NumericGuard(_) => CliError::Numeric(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Where and how to write a command's records.
#[derive(Debug, Clone)]
pub struct Output<'a> {
    pub format: Format,
    pub path: Option<&'a Path>,
}

impl Output<'_> {
    fn emit(&self, records: &[Record]) -> CliResult<()> {
        if records.iter().any(Record::has_null) {
            return Err(CliError::Numeric("non-finite value in output".into()));
        }
        match self.path {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                write_records(&mut w, records, self.format)?;
                w.flush()?;
            }
            None => {
                let mut w = io::stdout().lock();
                write_records(&mut w, records, self.format)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn check_samples(n_samples: &[usize]) -> CliResult<()> {
    if n_samples.contains(&0) {
        return Err(CliError::Usage("--n-samples entries must be >= 1".into()));
    }
    Ok(())
}

pub fn cmd_bound(d: u32, n_samples: &[usize], out: &Output) -> CliResult<()> {
    check_samples(n_samples)?;
    let row = bounds_row(Degree::new(d)?, n_samples)?;
    out.emit(&[Record::bounds_row(&row)])
}

pub fn cmd_scan(d_min: u32, d_max: u32, n_samples: &[usize], out: &Output) -> CliResult<()> {
    check_samples(n_samples)?;
    if d_min > d_max {
        return Err(CliError::Usage(format!(
            "--d-min {d_min} exceeds --d-max {d_max}"
        )));
    }
    let rows = bounds_table(Degree::new(d_min)?, Degree::new(d_max)?, n_samples)?;
    let records: Vec<Record> = rows.iter().map(Record::bounds_row).collect();
    out.emit(&records)
}

#[derive(Debug, Clone, Copy)]
pub struct SimulateArgs {
    pub d: u32,
    pub p: f64,
    pub horizon: u32,
    pub trials: u64,
    pub cap: usize,
    pub seed: u64,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

pub fn cmd_simulate(args: &SimulateArgs, out: &Output) -> CliResult<()> {
    let config = SimConfig::new(
        Degree::new(args.d)?,
        Probability::new(args.p)?,
        args.horizon,
        args.cap,
        args.trials,
        args.seed,
    )?;
    let estimate = match args.threads {
        Some(0) => return Err(CliError::Usage("--threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Numeric(e.to_string()))?
            .install(|| simulate_frog_model(&config)),
        None => simulate_frog_model(&config),
    };
    out.emit(&[Record::estimate(&config, &estimate)])
}

pub fn cmd_verify(level: Level, seed: u64, out: &Output) -> CliResult<()> {
    let report = verify::run(level, seed)?;
    let records: Vec<Record> = report.iter().map(Record::verification).collect();
    out.emit(&records)?;
    let failed = report.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Verification {
            failed,
            total: report.len(),
        });
    }
    Ok(())
}

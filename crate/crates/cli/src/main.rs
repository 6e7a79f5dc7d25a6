//! `ratrecon`: exact rational reconstruction from the command line.
//!
//! Every command writes one JSON document to stdout, holding a run manifest
//! and the command's result (or error). Diagnostics go to stderr.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ratrecon::FieldDescriptor;

/// Exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NO_WITNESS: u8 = 3;
    pub const BETA_ZERO: u8 = 4;
    pub const NO_FIT: u8 = 5;
    pub const VERIFICATION_FAILED: u8 = 6;
    pub const RECONSTRUCTION_FAILED: u8 = 7;
}

#[derive(Debug, Parser)]
#[command(name = "ratrecon", version, about = "Exact reconstruction of rational functions from evaluations")]
pub struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide rationality of a power-series prefix with Hankel determinants.
    Hankel(HankelArgs),
    /// Interpolate a univariate rational function from samples.
    Interp(InterpArgs),
    /// Reconstruct a multivariate rational function from an oracle.
    Reconstruct(ReconstructArgs),
    /// Tabulate the countable-field counterexample and refute low degrees.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Args)]
pub struct HankelArgs {
    /// JSON file `{"field": ..., "coeffs": [...]}`.
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long)]
    pub lmax: usize,
    #[arg(long)]
    pub mmax: usize,
    /// Overrides the field named in the series file (`q` or `fp:<p>`).
    #[arg(long)]
    pub field: Option<FieldDescriptor>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["at", "fit"]))]
pub struct InterpArgs {
    /// Sample file; `.json` is read as JSON, anything else as CSV.
    #[arg(long)]
    pub samples: PathBuf,
    /// Numerator degree.
    #[arg(long)]
    pub n: usize,
    /// Denominator degree.
    #[arg(long)]
    pub m: usize,
    /// Evaluate at this point with the determinant formula.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
    /// Solve for the coefficients instead.
    #[arg(long)]
    pub fit: bool,
    /// Field of the samples; for JSON files the default is the file's field.
    #[arg(long)]
    pub field: Option<FieldDescriptor>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("oracle").required(true).args(["expr", "oracle_replay"]))]
pub struct ReconstructArgs {
    /// Oracle expression in x1..x<arity>.
    #[arg(long)]
    pub expr: Option<String>,
    /// CSV table `x1,...,xk,value` recorded earlier; unlisted points are undefined.
    #[arg(long)]
    pub oracle_replay: Option<PathBuf>,
    #[arg(long)]
    pub arity: usize,
    #[arg(long, default_value = "fp:1000003")]
    pub field: FieldDescriptor,
    #[arg(long, env = "RATRECON_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Slices classified per recursion level.
    #[arg(long, default_value_t = 20)]
    pub samples_per_class: usize,
    #[arg(long, default_value_t = 12)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 6)]
    pub validation_extra: usize,
    #[arg(long, default_value_t = 100)]
    pub verify_trials: usize,
    /// Height bound for random rational points (ignored over F_p).
    #[arg(long, default_value_t = 10)]
    pub height_bound: u64,
    /// Write every oracle query and answer to this CSV file.
    #[arg(long)]
    pub record: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    /// Table size: values f(a_n, a_m) for n, m < N.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Largest total degree bound to refute.
    #[arg(long, default_value_t = 5)]
    pub dmax: usize,
    /// Side of the grid used for refutation.
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    /// Also write the table as CSV to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        set_threads(n);
    }
    let (code, doc) = commands::run(&cli.command);
    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
    ExitCode::from(code)
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        eprintln!("warning: could not configure {n} threads: {e}");
    }
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) {
    eprintln!("warning: built without the parallel feature; --threads ignored");
}

//! `hhf`: generate instances, recover factors, evaluate bounds, run sweeps.

mod commands;
mod failure;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "hhf", version, about = "Householder times binary matrix factorization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample u and X and write U.csv, X.csv, Y.csv and meta.json
    Generate(GenerateArgs),
    /// Polynomial-time recovery from Y.csv
    Recover(RecoverArgs),
    /// Exhaustive zero-error recovery from Y.csv (small n only)
    Exact(ExactArgs),
    /// Evaluate the concentration bounds and the column planner
    Bounds(BoundsArgs),
    /// Error-versus-columns sweep, written as figure1.csv
    Benchmark(BenchmarkArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub p: usize,
    #[arg(long, default_value_t = 0.3)]
    pub theta: f64,
    /// Falls back to $HHF_SEED, then 0
    #[arg(long, env = "HHF_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Reject generators whose entries sum to less than this in magnitude
    #[arg(long, default_value_t = 0.1)]
    pub min_abs_c: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    /// Y.csv, or a directory containing it. U.csv and X.csv next to it are used as ground truth.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Hard-threshold level
    #[arg(long, default_value_t = 0.5)]
    pub zeta: f64,
    /// Output directory (defaults to the input directory)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    /// Y.csv, or a directory containing it
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Refuse inputs with more rows than this (cost is 2^n per column)
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub p: usize,
    #[arg(long, default_value_t = 0.4)]
    pub theta: f64,
    /// Sum of the generator entries
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.05)]
    pub t: f64,
    /// Also write the report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchmarkArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Comma-separated Bernoulli parameters
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.4")]
    pub theta: Vec<f64>,
    /// Comma-separated, strictly ascending column counts
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "2,4,8,16,32,64,128,256,512,1024,2048,4096"
    )]
    pub p_values: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, env = "HHF_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Error level counted as a failure
    #[arg(long, default_value_t = 0.05)]
    pub t: f64,
    #[arg(long, default_value_t = 0.1)]
    pub min_abs_c: f64,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => commands::generate(&a),
        Command::Recover(a) => commands::recover(&a),
        Command::Exact(a) => commands::exact(&a),
        Command::Bounds(a) => commands::bounds(&a),
        Command::Benchmark(a) => commands::benchmark(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hhf: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

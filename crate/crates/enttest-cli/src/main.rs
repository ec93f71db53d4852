//! `enttest` — build and inspect entanglement testers, evaluate criteria on
//! state files, sweep the closed-form families, compare the realignment and
//! SIC criteria, and run randomized detection benchmarks.
//!
//! Exit codes: 0 success, 1 invalid state file, 2 usage error.
//! Reports go to stdout, diagnostics to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod formats;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown kinds/dimensions, unusable files: exit 2.
    Usage(String),
    /// A state file that parses but violates its invariants: exit 1.
    InvalidState(String),
}

impl CliError {
    fn invalid_state(msg: &str) -> Self {
        CliError::InvalidState(msg.to_string())
    }

    fn usage(msg: &str) -> Self {
        CliError::Usage(msg.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "enttest",
    version,
    about = "Entanglement testers: detection via tensor norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a built-in tester: norm, symmetric parameters, perfectness,
    /// and the test-operator fingerprint.
    TesterInfo(TesterInfoArgs),
    /// Evaluate a tester pair on a bipartite state file.
    Eval(EvalArgs),
    /// Multipartite bound for a pure state file.
    Multi(MultiArgs),
    /// Sweep a state family over μ and compare against the closed forms.
    Sweep(SweepArgs),
    /// Both sides of the inequality s ≥ (r+1)/2 for a state or a family.
    CompareRs(CompareRsArgs),
    /// Detection rates of the R and S testers on random mixed states.
    Bench(BenchArgs),
    /// Write a state file for one of the built-in families.
    GenState(GenStateArgs),
}

#[derive(Args)]
struct TesterInfoArgs {
    /// realignment | canonical | sic | sic-equivalent | t-delta | deformed
    #[arg(long)]
    kind: String,
    /// Local dimension.
    #[arg(long)]
    d: usize,
    /// Parameter for t-delta.
    #[arg(long)]
    delta: Option<f64>,
    /// Parameter for deformed.
    #[arg(long)]
    x: Option<f64>,
    /// Also dump the operators to this JSON file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Path to a JSON state file (bipartite).
    #[arg(long)]
    state: PathBuf,
    /// Tester spec: realignment | canonical | sic | sic-equivalent |
    /// t-delta:DELTA | deformed:X
    #[arg(long, default_value = "realignment")]
    tester_a: String,
    #[arg(long, default_value = "realignment")]
    tester_b: String,
    /// Tolerance above 1 before declaring entanglement.
    #[arg(long, default_value_t = 1e-9)]
    verdict_tol: f64,
}

#[derive(Args)]
struct MultiArgs {
    /// Path to a JSON state file (pure, any number of parties).
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 0x1057)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// isotropic | werner | noisy-pure
    #[arg(long)]
    family: String,
    #[arg(long)]
    d: usize,
    /// R | S
    #[arg(long, default_value = "R")]
    tester: String,
    /// μ grid step in (0, 1].
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Schmidt spectrum for noisy-pure, e.g. 0.5,0.3,0.2
    #[arg(long, value_delimiter = ',')]
    lambdas: Option<Vec<f64>>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareRsArgs {
    /// Path to a JSON state file (bipartite, equal local dims).
    #[arg(long, conflicts_with_all = ["family", "d"])]
    state: Option<PathBuf>,
    /// Sweep a family instead of a single state.
    #[arg(long, requires = "d")]
    family: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, value_delimiter = ',')]
    lambdas: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Local dimensions, e.g. 3,3
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Target purity range lo,hi inside [1/(d₁d₂), 1].
    #[arg(long, value_delimiter = ',')]
    purity_range: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenStateArgs {
    /// isotropic | werner | noisy-pure | w | max-entangled | random-pure |
    /// random-density | random-separable
    #[arg(long)]
    kind: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    lambdas: Option<Vec<f64>>,
    /// Subsystem dimensions for the random kinds, e.g. 2,2,2
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 4)]
    terms: usize,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::TesterInfo(args) => commands::tester_info(args),
        Command::Eval(args) => commands::eval(args),
        Command::Multi(args) => commands::multi(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::CompareRs(args) => commands::compare_rs(args),
        Command::Bench(args) => commands::bench(args),
        Command::GenState(args) => commands::gen_state(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::InvalidState(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

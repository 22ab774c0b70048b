//! `liltail` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 dominance failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "liltail", version, about = "Tail bounds for normed sums of random fields, and Monte Carlo checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Lp, mixed or CL norm of a grid function.
    Norm(NormArgs),
    /// Rosenthal, Doob and mixingale constants.
    Constants(ConstantsArgs),
    /// Tail bound curve from a moment envelope.
    Bound(BoundArgs),
    /// Chaining functional table for an indexed field.
    Entropy(EntropyArgs),
    /// Monte Carlo estimate of the tail with Clopper-Pearson limits.
    Simulate(SimulateArgs),
    /// Dominance report of a simulation CSV against a bound CSV.
    Compare(CompareArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct NormArgs {
    /// Grid function JSON: {axes: [{size, weights}], values}.
    #[arg(long)]
    pub field: PathBuf,
    /// One exponent for Lp over the product measure, one per axis for a mixed norm.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    /// Treat the last axis as the parameter set and take sup over it.
    #[arg(long)]
    pub cl: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsArgs {
    /// Moment orders for K_R(p).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// Use the constant for symmetric summands.
    #[arg(long)]
    pub symmetric: bool,
    /// Orders for the Doob factor L/(L-1).
    #[arg(long = "l", value_delimiter = ',')]
    pub l: Vec<f64>,
    /// Orders for the mixingale coefficient K_M(m).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<f64>,
    /// Mixing profile JSON; defaults to the geometric profile given by --beta-q.
    #[arg(long)]
    pub mixing: Option<PathBuf>,
    /// Ratio q of the geometric profile beta(k) = q^k.
    #[arg(long, default_value_t = 0.5)]
    pub beta_q: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingArg {
    Blockwise,
    Uniform,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremArg {
    G,
    F,
    Theta,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    /// Envelope JSON.
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    pub envelope: Option<PathBuf>,
    /// Field spec JSON; the envelope is built from its per-point moments.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Norming exponent r in v(n) = (ln ln(n + e^e - 1))^r.
    #[arg(long = "norming", visible_alias = "r", default_value_t = 0.5)]
    pub norming: f64,
    /// u grid as a:b:n, log-spaced; `e` is accepted for Euler's number.
    #[arg(long)]
    pub u_grid: String,
    /// Minimize over geometric partitions d in [d-min, d-max].
    #[arg(long)]
    pub optimize: bool,
    #[arg(long, default_value_t = 2)]
    pub d_min: u64,
    #[arg(long, default_value_t = 16)]
    pub d_max: u64,
    /// Geometric ratio when not optimizing.
    #[arg(long, default_value_t = 2)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = ScalingArg::Blockwise)]
    pub scaling: ScalingArg,
    /// Uniform scaling w for a fixed partition; defaults to just below sqrt(d).
    #[arg(long)]
    pub w: Option<f64>,
    /// Label recorded with the curve.
    #[arg(long, value_enum, default_value_t = TheoremArg::G)]
    pub theorem: TheoremArg,
    /// Output CSV: u, bound, d, w, truncation_k, vacuous_flag.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the envelope used, as JSON.
    #[arg(long)]
    pub envelope_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EntropyArgs {
    /// Indexed field JSON: {x_weights, nt, omega_weights, values}.
    #[arg(long, required_unless_present = "holder", conflicts_with = "holder")]
    pub field: Option<PathBuf>,
    /// Hölder example JSON: {c1, c2, l, b, p, dim, diameter}.
    #[arg(long)]
    pub holder: Option<PathBuf>,
    /// Covering JSON, {"kind": "analytic", D, d, l, C_cov} or {"kind": "empirical"}.
    #[arg(long)]
    pub covering: Option<PathBuf>,
    /// Exponent p (field mode).
    #[arg(long)]
    pub p: Option<f64>,
    /// Moment multipliers Z.
    #[arg(long, value_delimiter = ',', required = true)]
    pub z: Vec<f64>,
    /// Candidate theta values in (0, 1).
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<f64>,
    /// Candidate Hölder exponents alpha > 1.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Output JSON table; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the envelope L -> doob(L) nu_p(L/p) as JSON.
    #[arg(long)]
    pub envelope_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    /// Field spec JSON.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub n_max: u64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    /// u grid as a:b:n, log-spaced.
    #[arg(long)]
    pub u_grid: String,
    /// Output CSV: u, q_hat, cp_upper_99, trials.
    #[arg(long)]
    pub out: PathBuf,
    /// Report how much the suprema grow when the horizon doubles.
    #[arg(long)]
    pub horizon_check: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub sim: PathBuf,
    #[arg(long)]
    pub bound: PathBuf,
    /// Full report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunConfig<'a> {
    format_version: u32,
    threads: usize,
    #[serde(flatten)]
    command: &'a Command,
}

fn threads_from_env() -> Result<usize, String> {
    match std::env::var("LIL_THREADS") {
        Ok(s) => s.trim().parse().map_err(|_| format!("LIL_THREADS must be a non-negative integer, got {s:?}")),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let config = RunConfig { format_version: FORMAT_VERSION, threads, command: &cli.command };
    eprintln!("{}", serde_json::to_string(&config).expect("config serializes"));
    let result = liltail::simulate::with_threads(threads, || commands::run(&cli.command)).map_err(|e| e.to_string());
    match result.and_then(|r| r) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

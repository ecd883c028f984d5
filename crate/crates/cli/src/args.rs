use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "fproots",
    version,
    about = "Deterministic root finding over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print every root of a polynomial in F_p, ascending.
    Roots(RootsArgs),
    /// Print one root of a polynomial in F_p, or "no-root".
    Root(RootArgs),
    /// Refine polynomials into a pairwise coprime basis (JSON).
    Refine(RefineArgs),
    /// Run a character-sum experiment sweep and write CSV.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Time root finding on random split polynomials and write CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Prime modulus p.
    #[arg(long)]
    pub modulus: u64,
    /// Coefficients, constant term first: "c0,c1,...".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Below this modulus, roots are found by enumeration.
    #[arg(long, default_value_t = 4096)]
    pub small_p_cutoff: u64,
    /// Fail instead of doubling the shift range when a sweep does not split.
    #[arg(long)]
    pub no_fallback: bool,
    /// Print a self-describing JSON run record instead of plain output.
    #[arg(long)]
    pub record: bool,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Shift range multiplier: h = ceil(c_all * sqrt(p)).
    #[arg(long, default_value_t = 2.0)]
    pub c_all: f64,
    /// Print the roots as a JSON array.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Args, Debug)]
pub struct RootArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Exponent in the first-phase range h = (1 + sqrt(p)/n) p^(delta/2).
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Args, Debug)]
pub struct RefineArgs {
    #[arg(long)]
    pub modulus: u64,
    /// Input polynomial (repeatable), constant term first.
    #[arg(long = "poly", required = true, allow_hyphen_values = true)]
    pub polys: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SweepCommon {
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_list: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for trial-level parallelism (0 = all cores).
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// T_chi(I, S) over random h-spaced sets.
    Tchi(TchiArgs),
    /// The W counters and their bound ratios.
    Energy(EnergyArgs),
    /// Complete character sums of random squarefree polynomials.
    Weil(WeilArgs),
}

#[derive(Args, Debug)]
pub struct TchiArgs {
    #[command(flatten)]
    pub common: SweepCommon,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Interval length (default ceil(p^((1/2 + delta)/2))).
    #[arg(long)]
    pub h: Option<u64>,
    /// Size of S (default as for h).
    #[arg(long)]
    pub set_size: Option<usize>,
    /// Character order d (must divide p - 1).
    #[arg(long, default_value_t = 2)]
    pub order: u64,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub common: SweepCommon,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long)]
    pub h: Option<u64>,
    /// Lower end L of the prime interval [L, 2L] (default max(2, floor(sqrt h))).
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub set_size: Option<usize>,
    /// Check both counters against the nested-loop oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct WeilArgs {
    #[command(flatten)]
    pub common: SweepCommon,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 5)]
    pub max_deg: usize,
    #[arg(long, default_value_t = 2)]
    pub order: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BenchTarget {
    Roots,
    Root,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    pub algo: BenchTarget,
    #[arg(long)]
    pub modulus: u64,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

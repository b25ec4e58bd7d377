//! Command-line surface. Every flag is long-form.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::parse::{parse_complex, parse_q0, parse_rational};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_SHIFT_TOL: f64 = 1e-10;
pub const DEFAULT_LIMIT_TOL: f64 = 1e-4;
pub const DEFAULT_Q0: &str = "0.5,0.5";

#[derive(Parser, Debug)]
#[command(name = "qonf", version, about = "q-difference confluence and Gromov–Witten tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational curve counts N_d of the plane.
    Nd(NdArgs),
    /// Genus-zero potential of ℙ² truncated in the degree variable.
    Potential(PotentialArgs),
    /// WDVV residual of the ℙ² potential, optionally with perturbed counts.
    Wdvv(WdvvArgs),
    /// θ_q(Q) with its shift-law residual.
    Theta(ThetaArgs),
    /// q-character e_{q,λ}(Q) with its shift-law residual.
    Qchar(QcharArgs),
    /// q-logarithm ℓ_q(Q) with its shift-law residual.
    Qlog(ThetaArgs),
    /// Basic hypergeometric series and, for r = s + 1, its solution bases.
    Qhg(QhgArgs),
    /// Frobenius fundamental solution of a system at a numeric q.
    Solve(SolveArgs),
    /// Birkhoff matrix of the rank-one monodromy example and its q → 1 limit.
    Birkhoff(BirkhoffArgs),
    /// Four-condition confluence report.
    Confluence(ConfluenceArgs),
    /// J-function coefficient tables.
    Jfn(JfnArgs),
    /// Exact q → 1 comparison of the K-theoretic and cohomological J-functions.
    Compare(CompareArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NdArgs {
    #[arg(long)]
    pub dmax: i64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    /// Highest power of E kept.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct WdvvArgs {
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Replace N_d: `d:value` (repeatable).
    #[arg(long = "perturb")]
    pub perturb: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Complex64,
    #[arg(long = "Q", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_q: Complex64,
    #[arg(long, default_value_t = DEFAULT_SHIFT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct QcharArgs {
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    #[arg(long = "Q", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_q: Complex64,
    #[arg(long, default_value_t = DEFAULT_SHIFT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct QhgArgs {
    /// Upper parameter (repeatable).
    #[arg(long = "a", value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Vec<Complex64>,
    /// Lower parameter (repeatable).
    #[arg(long = "b", value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Vec<Complex64>,
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Complex64,
    #[arg(long = "Q", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_q: Complex64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Builtin name or path to a system JSON file.
    #[arg(long)]
    pub system: String,
    /// `N` for `pn-j`.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// `z` for `pn-j`, as p/q.
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub z: BigRational,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Option<Complex64>,
    #[arg(long = "Q", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_q: Complex64,
    /// Series truncation degree.
    #[arg(long = "D", default_value_t = 30)]
    pub d: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BirkhoffArgs {
    #[arg(long = "Q", value_parser = parse_complex, allow_hyphen_values = true)]
    pub big_q: Complex64,
    /// Evaluate at this q; otherwise take the limit along q0^t.
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Option<Complex64>,
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true, default_value = DEFAULT_Q0)]
    pub q0: Complex64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ScheduleArgs {
    /// Path parameters t = 2^{-kmin}, …, 2^{-kmax}.
    #[arg(long, default_value_t = 4)]
    pub kmin: i32,
    #[arg(long, default_value_t = 16)]
    pub kmax: i32,
}

#[derive(Args, Debug)]
pub struct ConfluenceArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true, default_value = DEFAULT_Q0)]
    pub q0: Complex64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum JfnKind {
    Kth,
    KthModified,
    Coh,
    Equivariant,
}

#[derive(Args, Debug)]
pub struct JfnArgs {
    #[arg(long, value_enum)]
    pub kind: JfnKind,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "D")]
    pub d: usize,
    /// Equivariant weight λ_i (repeatable, N + 1 values).
    #[arg(long = "lambda", value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Vec<Complex64>,
    /// `z`: exact p/q for `coh`, and its real value for `equivariant`.
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub z: BigRational,
    /// Numeric q for `equivariant`.
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true)]
    pub q: Option<Complex64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "D")]
    pub d: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Qspecial,
    Qdiff,
    Confluence,
    GwExact,
    GwEquivariant,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance for shift laws and residuals.
    #[arg(long, default_value_t = DEFAULT_SHIFT_TOL)]
    pub tol: f64,
    /// Tolerance for extrapolated q → 1 limits.
    #[arg(long, default_value_t = DEFAULT_LIMIT_TOL)]
    pub limit_tol: f64,
    #[arg(long, value_parser = parse_q0, allow_hyphen_values = true, default_value = DEFAULT_Q0)]
    pub q0: Complex64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

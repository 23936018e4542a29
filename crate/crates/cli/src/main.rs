//! `hecke2b`: command-line front end for the calibrated-module library.
//!
//! Exit codes: 0 success, 1 internal error, 2 domain or validation error,
//! 3 verification failure.

mod commands;
mod config;
mod views;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hecke2b",
    version,
    about = "Calibrated representations of the two-boundary affine Hecke algebra"
)]
pub struct Cli {
    /// File of `key = value` lines supplying default flags for the subcommand.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Z(c), P(c), the region F^(c,J), its box configuration and fillings.
    Region(RegionArgs),
    /// Build a module and print its generator matrices.
    ModuleBuild(ModuleArgs),
    /// Build a module and check every defining relation.
    ModuleVerify(VerifyArgs),
    /// The Bratteli diagram of M ⊗ N ⊗ V^⊗k.
    Bratteli(BratteliArgs),
    /// λ ↦ (z, c, J) for a vertex of the Bratteli diagram.
    MapLambda(MapLambdaArgs),
    /// The dimension identity Σ |T_k^λ| dim L(λ) = dim L(a^c) dim L(b^d) n^k.
    VerifySw(VerifySwArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormalizationArg {
    /// Exact entries in the base field.
    #[default]
    TauBasis,
    /// Symmetric square-root entries, double precision.
    SymmetricFloat,
}

/// A local region (c, J) with its marked diagonals.
#[derive(Args, Debug, Clone, Default)]
pub struct RegionSpec {
    /// Contents c₁,…,c_k as integers or p/2.
    #[arg(long = "c", value_name = "LIST", allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Marked diagonal r₁ (integer or p/2).
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    /// Marked diagonal r₂ (integer or p/2).
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    /// Roots of J, e.g. "e3-e2, e1".
    #[arg(long = "J", value_name = "ROOTS", default_value = "")]
    pub j: String,
}

/// Parameters: either direct (t^{1/2}, t₀^{1/2}, t_k^{1/2}) or a rectangle
/// pair (a,c,b,d) with t^{1/2} = q.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamSpec {
    #[arg(long, value_name = "SCALAR", allow_hyphen_values = true)]
    pub t_half: Option<String>,
    #[arg(long, value_name = "SCALAR", allow_hyphen_values = true)]
    pub t0_half: Option<String>,
    #[arg(long, value_name = "SCALAR", allow_hyphen_values = true)]
    pub tk_half: Option<String>,
    /// Rectangles a,c,b,d for M = L(a^c), N = L(b^d).
    #[arg(long, value_name = "A,C,B,D")]
    pub rect: Option<String>,
    /// t^{1/2} in rectangle mode.
    #[arg(
        long,
        value_name = "SCALAR",
        default_value = "2",
        allow_hyphen_values = true
    )]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub region: RegionSpec,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub region: RegionSpec,
    #[command(flatten)]
    pub params: ParamSpec,
    /// Central value z (W₀ acts by z); defaults to 1, or to the value
    /// determined by λ in path mode.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// A rank-two non-calibrated family, e.g. "L+(r1,r1)".
    #[arg(long, value_name = "CLASS", allow_hyphen_values = true)]
    pub rank2: Option<String>,
    /// A partition; builds B_k^λ on the path basis (needs --rect).
    #[arg(long, value_name = "PARTS")]
    pub lambda: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub normalization: NormalizationArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// A built-in fixture: its index, or "all".
    #[arg(long, value_name = "INDEX|all")]
    pub fixture: Option<String>,
    /// List the built-in fixtures and exit.
    #[arg(long)]
    pub list_fixtures: bool,
    /// Also check the intertwiner identities (τ² scalars, τW = Wτ).
    #[arg(long)]
    pub intertwiners: bool,
}

#[derive(Args, Debug)]
pub struct BratteliArgs {
    #[arg(long, value_name = "A,C,B,D")]
    pub rect: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub k: usize,
    /// Keep only partitions with at most this many rows.
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MapLambdaArgs {
    #[arg(long, value_name = "A,C,B,D")]
    pub rect: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_name = "PARTS")]
    pub lambda: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifySwArgs {
    #[arg(long, value_name = "A,C,B,D")]
    pub rect: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub k: usize,
    /// Rank of gl_n.
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A bad combination of flags.
    #[error("{0}")]
    Usage(String),
    /// A failed check; the report is printed before exiting with code 3.
    #[error("verification failed: {summary}")]
    Verification { summary: String, report: String },
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if matches!(
        e.downcast_ref::<CliError>(),
        Some(CliError::Verification { .. })
    ) {
        3
    } else if e
        .chain()
        .any(|c| c.is::<hecke2b::Error>() || c.is::<CliError>())
    {
        2
    } else {
        1
    }
}

fn run() -> Result<()> {
    let cmd = Cli::command();
    let args = config::merge(&cmd, std::env::args_os().collect())
        .map_err(|e| CliError::Usage(format!("{e:#}")))?;
    let matches = match cmd.try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => e.exit(),
    };
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    let out = commands::dispatch(&cli.command)?;
    print!("{out}");
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(CliError::Verification { report, .. }) = e.downcast_ref::<CliError>() {
                print!("{report}");
            }
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

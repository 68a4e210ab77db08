use std::fmt;
use std::path::PathBuf;

use adjx_core::adjoint::Strategy;
use adjx_core::algebra::PrimeField;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "adjx", version, about = "Exact determinants, adjoints and inverses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of the matrix in --in.
    Det(RunArgs),
    /// Determinant and adjoint (adjugate).
    Adjoint(RunArgs),
    /// Determinant and inverse.
    Inverse(RunArgs),
    /// Compare the adjoint with independent oracles on random matrices.
    Check(CheckArgs),
    /// Count ring operations over a range of sizes; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Zp(u64),
    Int,
    Rational,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zp(p) => write!(f, "zp:{p}"),
            RingSpec::Int => f.write_str("int"),
            RingSpec::Rational => f.write_str("rational"),
        }
    }
}

pub fn parse_ring(s: &str) -> Result<RingSpec, String> {
    match s {
        "int" => Ok(RingSpec::Int),
        "rational" => Ok(RingSpec::Rational),
        _ => {
            let p = s
                .strip_prefix("zp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected zp:P, int or rational, got {s:?}"))?;
            PrimeField::try_new(p)
                .map(|_| RingSpec::Zp(p))
                .ok_or_else(|| format!("{p} is not a prime below 2^31"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Field,
    DivisionFree,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Field => "field",
            Mode::DivisionFree => "division-free",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Sum,
    Squaring,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Sum => Strategy::Sum,
            StrategyArg::Squaring => Strategy::Squaring,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Cofactor,
    Tape,
    Dual,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchOp {
    Det,
    Adjoint,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Falls back to ADJX_SEED, then 1.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Form of the power step in the adjoint pass.
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Projection pairs to try before giving up.
    #[arg(long, default_value_t = 8)]
    pub retries: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Matrix file, `-` for stdin.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_ring, default_value = "rational")]
    pub ring: RingSpec,
    #[arg(long, value_enum, default_value = "field")]
    pub mode: Mode,
    #[command(flatten)]
    pub common: Common,
    /// Print `timing_ms: null` so output is byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub against: Oracle,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, value_parser = parse_ring, default_value = "zp:10007")]
    pub ring: RingSpec,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Comma-separated sizes, e.g. 8,16,32.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub sizes: Vec<usize>,
    #[arg(long, value_enum, default_value = "field")]
    pub mode: Mode,
    /// Defaults to zp:10007 in field mode and int in division-free mode.
    #[arg(long, value_parser = parse_ring)]
    pub ring: Option<RingSpec>,
    /// What to count in field mode.
    #[arg(long, value_enum, default_value = "det")]
    pub op: BenchOp,
    #[command(flatten)]
    pub common: Common,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs() {
        assert_eq!(parse_ring("zp:10007"), Ok(RingSpec::Zp(10007)));
        assert_eq!(parse_ring("int"), Ok(RingSpec::Int));
        assert_eq!(parse_ring("rational"), Ok(RingSpec::Rational));
        assert!(parse_ring("zp:10005").is_err());
        assert!(parse_ring("zp:").is_err());
        assert!(parse_ring("real").is_err());
        assert_eq!(RingSpec::Zp(7).to_string(), "zp:7");
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

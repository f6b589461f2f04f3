use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_orbits::sampler::Mode;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

#[derive(Debug, Parser)]
#[command(name = "cubic-orbits", version, about = "Random cubic orders via orbits of binary cubic forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw random forms with 0 < |disc| <= T.
    Sample(SampleArgs),
    /// List every orbit with 0 < |disc| <= T (T <= 100000).
    Enumerate(EnumerateArgs),
    /// Chi-square test of sampled orbit frequencies against the census.
    Stats(StatsArgs),
    /// Mean time per weighted sample at T = 2^t.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Weighted,
    Uniform,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weighted => Mode::Weighted,
            ModeArg::Uniform => Mode::Uniform,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of real roots: 1 or 3.
    #[arg(long, value_parser = parse_signature)]
    pub signature: u8,
    /// Discriminant bound T, decimal or b^k (e.g. 2^200).
    #[arg(long, value_parser = parse_bound)]
    pub bound: BigInt,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0: one per core). Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, value_enum, default_value = "weighted")]
    pub mode: ModeArg,
    /// Random seed; drawn from the OS when omitted. Always echoed to stderr.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Ball radius R as a fraction (default 7/4 for signature 1, 5/4 for 3).
    #[arg(long, value_parser = parse_fraction)]
    pub radius: Option<BigRational>,
    /// First working precision in bits, a power of two.
    #[arg(long, default_value_t = 2, value_parser = parse_precision)]
    pub initial_precision: u32,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Exponents t; each row times T = 2^t.
    #[arg(long, value_delimiter = ',', default_values_t = [20u32, 200, 2000])]
    pub exponents: Vec<u32>,
    /// Samples per signature and exponent.
    #[arg(long, default_value_t = 20)]
    pub count: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_signature(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "3" => Ok(3),
        _ => Err(format!("signature must be 1 or 3, got {s:?}")),
    }
}

/// A nonnegative integer given as decimal digits or as `base^exponent`.
pub fn parse_bound(s: &str) -> Result<BigInt, String> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: BigInt = base.trim().parse().map_err(|_| format!("bad base in {s:?}"))?;
            let exp: u32 = exp.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            if base == BigInt::from(2) {
                BigInt::one() << exp
            } else {
                Pow::pow(base, exp)
            }
        }
        None => s.parse().map_err(|_| format!("bound must be an integer or b^k, got {s:?}"))?,
    };
    if value < BigInt::one() {
        return Err(format!("bound must be at least 1, got {s}"));
    }
    Ok(value)
}

fn parse_fraction(s: &str) -> Result<BigRational, String> {
    s.parse().map_err(|_| format!("expected a fraction like 7/4, got {s:?}"))
}

fn parse_precision(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("bad precision {s:?}"))?;
    if p >= 2 && p.is_power_of_two() {
        Ok(p)
    } else {
        Err(format!("precision must be a power of two >= 2, got {p}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("1000").unwrap(), BigInt::from(1000));
        assert_eq!(parse_bound("2^10").unwrap(), BigInt::from(1024));
        assert_eq!(parse_bound("10^6").unwrap(), BigInt::from(1_000_000));
        assert_eq!(parse_bound("2^200000").unwrap().bits(), 200_001);
        assert!(parse_bound("0").is_err());
        assert!(parse_bound("2^x").is_err());
        assert!(parse_bound("1e5").is_err());
    }

    #[test]
    fn precision_and_fraction() {
        assert_eq!(parse_precision("64"), Ok(64));
        assert!(parse_precision("3").is_err());
        assert!(parse_precision("1").is_err());
        assert_eq!(parse_fraction("7/4").unwrap(), BigRational::new(7.into(), 4.into()));
    }
}

//! The `gcflag` command line: potentials, split leading term solutions,
//! certificates, diagrams and batch grids.
//!
//! Exit codes: 0 when everything checked passes, 1 when a verification or
//! construction fails, 2 on malformed input.

mod commands;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use novikov::{parse_q, Q};

pub use commands::{error_code, run, Outcome, UsageError};

#[derive(Parser, Debug)]
#[command(
    name = "gcflag",
    version,
    about = "Critical-point certificates for Gelfand-Cetlin fibers of complete flag manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the potential of the segment point, optionally deformed by a bulk file
    Potential(PotentialArgs),
    /// Find a generic seed (or take one from a file) and solve the split leading term equations
    Slt(SltArgs),
    /// Build and check a critical-point certificate
    Certify(CertifyArgs),
    /// Re-check a certificate file
    Verify(VerifyArgs),
    /// Draw the ladder diagram with its segment markers
    Diagram(DiagramArgs),
    /// Run slt or certify over a range of sizes in parallel
    Grid(GridArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the main artifact here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    #[arg(long)]
    pub n: usize,
    /// Box size; the single segment of n = 3 is labelled m = 2
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_parser = rational)]
    pub t: Q,
    /// Bulk parameter as JSON (`{"c_hor": {...}, "c_ver": {...}}`)
    #[arg(long)]
    pub bulk: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SltArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Seed as JSON (`{"n": .., "m": .., "d": {"i,j": "p/q", ..}}`)
    #[arg(long)]
    pub seed: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_parser = rational)]
    pub t: Q,
    /// Precision N of the stored series
    #[arg(long, value_parser = rational, default_value = "2")]
    pub cap: Q,
    #[arg(long)]
    pub seed: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON file
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    #[arg(long)]
    pub n: usize,
    /// Box sizes to mark (all valid sizes when omitted)
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridStage {
    Slt,
    Certify,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Sizes as `a..b` (inclusive) or a single value
    #[arg(long, value_parser = size_range)]
    pub n: SizeRange,
    /// Values of t, comma separated
    #[arg(long, value_parser = rational, value_delimiter = ',', default_value = "1/2")]
    pub t: Vec<Q>,
    #[arg(long, value_parser = rational, default_value = "2")]
    pub cap: Q,
    #[arg(long, value_enum, default_value_t = GridStage::Certify)]
    pub stage: GridStage,
    /// Worker threads (defaults to the number of cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

fn rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("expected a rational `p/q`, got `{s}`"))
}

fn size_range(s: &str) -> Result<SizeRange, String> {
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected `a..b` or an integer, got `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(SizeRange { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use novikov::qf;

    #[test]
    fn ranges() {
        assert_eq!(size_range("4..8"), Ok(SizeRange { lo: 4, hi: 8 }));
        assert_eq!(size_range("4..=8"), Ok(SizeRange { lo: 4, hi: 8 }));
        assert_eq!(size_range("5"), Ok(SizeRange { lo: 5, hi: 5 }));
        assert!(size_range("8..4").is_err());
        assert!(size_range("x").is_err());
    }

    #[test]
    fn rationals_only() {
        assert_eq!(rational("1/3"), Ok(qf(1, 3)));
        assert!(rational("0.5").is_err());
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "gcflag", "certify", "--n", "6", "--m", "2", "--t", "1/2", "--cap", "3",
        ])
        .unwrap();
        match cli.command {
            Command::Certify(a) => {
                assert_eq!((a.n, a.m), (6, 2));
                assert_eq!(a.cap, qf(3, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Cli::try_parse_from([
            "gcflag", "grid", "--n", "4..6", "--t", "1/4,1/2", "--jobs", "2"
        ])
        .is_ok());
    }
}

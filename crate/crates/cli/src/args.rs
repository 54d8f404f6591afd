use std::path::PathBuf;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hetdss::rational::parse_rational;
use hetdss::{Rational, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "hetdss",
    version,
    about = "Exact capacity and storage/bandwidth tradeoffs for heterogeneous distributed storage"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads; results are identical for every value.
    #[arg(long, global = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub threads: Option<usize>,

    /// Directory for reports and CSV files.
    #[arg(
        long,
        global = true,
        env = "HETDSS_OUT_DIR",
        default_value = "hetdss-out"
    )]
    pub out_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a spec file and list every violated rule.
    Validate(SpecArg),
    /// Minimum cut value over all surviving sequences.
    Capacity(CapacityArgs),
    /// MSR and MBR operating points for a file size.
    Points(PointsArgs),
    /// Minimal storage along a grid of per-helper bandwidths.
    Tradeoff(TradeoffArgs),
    /// Information flow graph of one surviving sequence in DOT format.
    Graph(GraphArgs),
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// JSON spec file.
    pub spec: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Pruned,
    Exhaustive,
}

impl From<StrategyArg> for Strategy {
    fn from(value: StrategyArg) -> Self {
        match value {
            StrategyArg::Pruned => Strategy::Pruned,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
        }
    }
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    pub spec: PathBuf,

    /// Also compute the capacity through max flow on every sequence (n <= 6).
    #[arg(long)]
    pub oracle: bool,

    #[arg(long, value_enum, default_value = "pruned")]
    pub strategy: StrategyArg,
}

#[derive(Debug, Args)]
pub struct PointsArgs {
    pub spec: PathBuf,

    /// File size, integer or p/q.
    #[arg(long = "B", value_parser = parse_positive)]
    pub file_size: Rational,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    /// Spec file whose storage vector is scaled; alternative to --profile.
    #[arg(conflicts_with = "profile", required_unless_present = "profile")]
    pub spec: Option<PathBuf>,

    /// Colon-separated repair degrees, e.g. 4:4:5:5:5:6:6. Storage follows the same proportions.
    #[arg(long, value_parser = parse_profile, requires = "k")]
    pub profile: Option<Profile>,

    /// Reconstruction degree (with --profile).
    #[arg(long, conflicts_with = "spec")]
    pub k: Option<usize>,

    #[arg(long = "B", value_parser = parse_positive)]
    pub file_size: Rational,

    /// Comma-separated rationals, or lo:hi:steps for evenly spaced points.
    #[arg(long, value_parser = parse_grid)]
    pub beta_grid: Grid,

    /// Repair degree of the homogeneous comparator curve. Defaults to the mean
    /// repair degree when that is an integer.
    #[arg(long)]
    pub homogeneous_d: Option<usize>,

    /// Skip the homogeneous comparator.
    #[arg(long, conflicts_with = "homogeneous_d")]
    pub no_homogeneous: bool,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    pub spec: PathBuf,

    /// Entries node:set with 1-based set numbers, e.g. 2:1,1:2. Defaults to the
    /// capacity-minimising sequence.
    #[arg(long)]
    pub sequence: Option<String>,
}

/// Repair degrees of a profile-driven system.
#[derive(Debug, Clone)]
pub struct Profile(pub Vec<usize>);

#[derive(Debug, Clone)]
pub struct Grid(pub Vec<Rational>);

fn parse_positive(text: &str) -> anyhow::Result<Rational> {
    let value = parse_rational(text)?;
    if value <= Rational::from_integer(0.into()) {
        bail!("must be positive, got {text}");
    }
    Ok(value)
}

pub fn parse_profile(text: &str) -> anyhow::Result<Profile> {
    let profile = text
        .split(':')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("bad profile entry {part:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if profile.len() < 2 {
        bail!("profile needs at least two nodes");
    }
    Ok(Profile(profile))
}

/// `a,b,c` or `lo:hi:steps` (inclusive ends).
pub fn parse_grid(text: &str) -> anyhow::Result<Grid> {
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [lo, hi, steps] => {
            let lo = parse_rational(lo.trim())?;
            let hi = parse_rational(hi.trim())?;
            let steps: usize = steps.trim().parse().context("bad step count")?;
            if steps < 2 || hi < lo {
                bail!("grid lo:hi:steps needs lo <= hi and steps >= 2");
            }
            let last = Rational::from_integer((steps - 1).into());
            (0..steps)
                .map(|i| &lo + (&hi - &lo) * Rational::from_integer(i.into()) / &last)
                .collect()
        }
        [list] => list
            .split(',')
            .map(|v| parse_rational(v.trim()).map_err(anyhow::Error::from))
            .collect::<anyhow::Result<Vec<_>>>()?,
        _ => bail!("expected a comma list or lo:hi:steps"),
    };
    if grid.iter().any(|b| *b < Rational::from_integer(0.into())) {
        bail!("beta must be nonnegative");
    }
    Ok(Grid(grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hetdss::rational::{int, ratio};

    #[test]
    fn grids() {
        assert_eq!(
            parse_grid("1/8, 1/14").unwrap().0,
            vec![ratio(1, 8), ratio(1, 14)]
        );
        assert_eq!(
            parse_grid("0:1:5").unwrap().0,
            vec![int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)]
        );
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("-1").is_err());
        assert!(parse_grid("0.5").is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(parse_profile("4:4:5").unwrap().0, vec![4, 4, 5]);
        assert!(parse_profile("4").is_err());
        assert!(parse_profile("4:x").is_err());
    }

    #[test]
    fn positive_file_size() {
        assert!(parse_positive("0").is_err());
        assert!(parse_positive("-3").is_err());
        assert_eq!(parse_positive("3/2").unwrap(), ratio(3, 2));
    }
}

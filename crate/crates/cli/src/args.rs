use std::path::PathBuf;

use branchix::Family;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "branchix",
    version,
    about = "Branching matrices of commuting tuples in GT_n(F_q) and UT_n(F_q)"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached results.
    #[arg(long, global = true, env = "BRANCHIX_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore and do not write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest group that may be enumerated element by element.
    #[arg(long, global = true, env = "BRANCHIX_GUARD")]
    pub guard: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the type registry and branching matrix of one group.
    Compute {
        #[command(flatten)]
        group: GroupArgs,
        /// Write JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare computed matrices with the reference tables.
    Verify(VerifyArgs),
    /// Commuting probability from the requested sources.
    Cp(CpArgs),
    /// Reconstruct polynomial entries from several primes.
    Interpolate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', required = true)]
        qs: Vec<u32>,
        /// Degree bound (default: the largest degree in the reference).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reference data.
    Reference {
        #[command(subcommand)]
        action: ReferenceAction,
    },
    /// Same as `reference export`.
    ReferenceExport(ExportArgs),
    /// Brute-force commuting probability.
    OracleCp {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReferenceAction {
    /// Print a reference table with its self-checks.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Group such as `ut5` or `GT_4`.
    #[arg(long)]
    pub group: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_family, required_unless_present = "all", conflicts_with = "all")]
    pub family: Option<Family>,
    #[arg(long, required_unless_present = "all")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "all")]
    pub q: Option<u32>,
    /// Run the whole acceptance grid.
    #[arg(long)]
    pub all: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Zero the timings so that reports are reproducible.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct CpArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, conflicts_with = "symbolic", required_unless_present = "symbolic")]
    pub q: Option<u32>,
    #[arg(long)]
    pub symbolic: bool,
    /// Add the brute-force count (small groups only).
    #[arg(long, conflicts_with = "symbolic")]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

/// Parses `ut5`, `UT5`, `ut_5` or `UT_5`.
pub fn parse_group(s: &str) -> Option<(Family, usize)> {
    let lower = s.to_ascii_lowercase();
    let family: Family = lower.get(..2)?.parse().ok()?;
    let rest = lower.get(2..)?;
    let n = rest.trim_start_matches('_').parse().ok()?;
    Some((family, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn group_names() {
        assert_eq!(parse_group("ut5"), Some((Family::Ut, 5)));
        assert_eq!(parse_group("GT_4"), Some((Family::Gt, 4)));
        assert_eq!(parse_group("xx3"), None);
        assert_eq!(parse_group("g"), None);
        assert_eq!(parse_group("gé4"), None);
    }
}

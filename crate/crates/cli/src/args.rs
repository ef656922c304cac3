use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use erbimatch::evaluation::ReportFormat;
use erbimatch::recipes::Recipe;
use erbimatch::simgen::{Scheme, Unit};
use erbimatch::BmcBasis;

#[derive(Debug, Parser)]
#[command(
    name = "erbimatch",
    version,
    about = "Bipartite graph matching for clean-clean entity resolution"
)]
pub struct Cli {
    /// Worker threads for graph construction and sweeps [default: all cores].
    #[arg(long, global = true, env = "ERBIMATCH_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a normalized similarity graph from two profile collections.
    BuildGraph(BuildGraphArgs),
    /// Run one matcher at one threshold.
    Match(MatchArgs),
    /// Sweep thresholds and report the F-measure optimum per algorithm.
    Sweep(SweepArgs),
    /// Time matchers at a fixed threshold.
    Bench(BenchArgs),
    /// Friedman test and Nemenyi critical distance over a score matrix.
    Stats(StatsArgs),
    /// Run a built-in end-to-end recipe on a benchmark dataset.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Raw,
    Bag,
    Graph,
    Vector,
}

#[derive(Debug, Args)]
pub struct BuildGraphArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    /// Compare only this attribute; all values are used when omitted.
    #[arg(long)]
    pub attribute: Option<String>,
    #[arg(long, value_enum, default_value = "bag")]
    pub model: ModelKind,
    #[arg(long, default_value = "character")]
    pub unit: Unit,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "tf-idf")]
    pub scheme: Scheme,
    #[arg(long, default_value = "cosine")]
    pub measure: String,
    #[arg(long, requires = "right_embeddings")]
    pub left_embeddings: Option<PathBuf>,
    #[arg(long, requires = "left_embeddings")]
    pub right_embeddings: Option<PathBuf>,
    /// Refuse inputs whose Cartesian product exceeds this many pairs.
    #[arg(long)]
    pub max_pairs: Option<u64>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatcherArgs {
    /// Swap attempts for BAH.
    #[arg(long, default_value_t = 10_000)]
    pub max_moves: u64,
    /// Time limit for BAH in seconds.
    #[arg(long, default_value_t = 120.0)]
    pub time_limit: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Partition that opens clusters in BMC: left, right or auto.
    #[arg(long, default_value = "auto")]
    pub basis: BmcBasis,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub algorithm: erbimatch::Algorithm,
    #[arg(long, value_parser = parse_threshold)]
    pub threshold: f64,
    #[command(flatten)]
    pub matcher: MatcherArgs,
    /// Ground truth; when given, precision, recall and F1 go to stderr.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report destination; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    /// Comma-separated algorithm names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub algorithm: Vec<String>,
    /// Label for the dataset column; defaults to the graph file stem.
    #[arg(long)]
    pub dataset: Option<String>,
    #[command(flatten)]
    pub matcher: MatcherArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub algorithm: Vec<String>,
    #[arg(long, value_parser = parse_threshold)]
    pub threshold: f64,
    #[arg(long, default_value_t = 10)]
    pub repetitions: usize,
    #[arg(long)]
    pub dataset: Option<String>,
    #[command(flatten)]
    pub matcher: MatcherArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// CSV with header `input,<alg>,<alg>,...` and one row per input.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub recipe: Recipe,
    /// Directory holding one sub-directory per dataset.
    #[arg(long, env = "ERBIMATCH_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    #[command(flatten)]
    pub report: ReportArgs,
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else {
        Err(format!("threshold {t} outside [0, 1]"))
    }
}

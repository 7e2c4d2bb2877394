//! Command-line surface. Most value flags are optional so a JSON config
//! file can supply them; explicit flags always win.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "botscope",
    version,
    about = "Batch forensics for tweet archives: bot classification and campaign statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train the ten-feature logistic-regression bot classifier from a
    /// labeled CSV, with stratified k-fold cross-validation.
    Train(TrainArgs),
    /// Classify every user in one or more archives against a trained model.
    Classify(ClassifyArgs),
    /// Compute corpus analytics into a report bundle.
    Analyze(Box<AnalyzeArgs>),
    /// Generate a seeded synthetic corpus with ground-truth sidecars.
    GenFixture(GenFixtureArgs),
    /// Re-hash a report bundle against its manifest.
    ValidateBundle(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Labeled training CSV (fixed header, label column first).
    #[arg(long)]
    pub training_csv: PathBuf,
    /// Output bundle directory.
    #[arg(long)]
    pub out: PathBuf,
    /// L2 penalty on the weights (default 1e-4).
    #[arg(long)]
    pub l2: Option<f64>,
    /// Gradient-descent iteration cap (default 5000).
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Stop when the loss decrease drops below this (default 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-validation folds (default 10, 0 skips CV).
    #[arg(long)]
    pub folds: Option<usize>,
    /// Optional JSON config file; flags win over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Archive files (NDJSON, optionally gzip).
    #[arg(required = true)]
    pub corpus: Vec<PathBuf>,
    /// Trained model JSON.
    #[arg(long)]
    pub model: PathBuf,
    /// Output bundle directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Hard rule: verified accounts are always classified human.
    #[arg(long)]
    pub verified_are_human: bool,
    /// Parser shard threads (0 = auto).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Archive files (NDJSON, optionally gzip).
    #[arg(required = true)]
    pub corpus: Vec<PathBuf>,
    /// Output bundle directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Partition CSV from `classify` (user_id,...,label,...) mapping users
    /// to bot/human. Required by compare/correlate/deltas.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Comma-separated campaign terms; adds campaign-scoped outputs.
    #[arg(long)]
    pub campaign_terms: Option<String>,
    /// Which fields campaign terms match: "hashtags", "text", or both
    /// (default "hashtags,text").
    #[arg(long)]
    pub campaign_fields: Option<String>,
    /// Comma-separated selectors from {timeline, ranks, languages,
    /// distributions, compare, correlate, deltas, dormancy}. Default: every
    /// analysis the provided inputs support.
    #[arg(long)]
    pub select: Option<String>,
    /// Timeline bin width in seconds (default 60).
    #[arg(long)]
    pub bin_seconds: Option<u32>,
    /// Rank-table cutoff (default 20).
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Emit separate timeline series for retweet traffic.
    #[arg(long)]
    pub split_retweets: bool,
    /// t-test variant: "welch" (default) or "pooled".
    #[arg(long)]
    pub t_variant: Option<String>,
    /// Follower-delta table size (default 10).
    #[arg(long)]
    pub deltas_k: Option<usize>,
    /// Optional account-status sidecar CSV (user_id,status); adds a status
    /// column to the per-bot tables. Statuses are never computed.
    #[arg(long)]
    pub status_file: Option<PathBuf>,
    /// Per-user activity trace file (user_id,timestamp) for dormancy.
    #[arg(long)]
    pub traces: Option<PathBuf>,
    /// Dormancy window A as "start..end" (ISO-8601 or epoch seconds).
    #[arg(long)]
    pub window_a: Option<String>,
    /// Dormancy window B as "start..end".
    #[arg(long)]
    pub window_b: Option<String>,
    /// Dormancy thresholds (defaults 5, 5, 1).
    #[arg(long)]
    pub min_a: Option<u64>,
    #[arg(long)]
    pub min_b: Option<u64>,
    #[arg(long)]
    pub max_gap: Option<u64>,
    /// Extra stopwords file, one word per line.
    #[arg(long)]
    pub extra_stopwords: Option<PathBuf>,
    /// Parser shard threads (0 = auto).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenFixtureArgs {
    /// Output directory for corpus.ndjson + sidecars.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub users: usize,
    #[arg(long, default_value_t = 0.18)]
    pub bot_frac: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Corpus range start/end (ISO-8601 or epoch seconds).
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub end: Option<String>,
    /// Fraction of tweets carrying the campaign hashtag.
    #[arg(long, default_value_t = 0.15)]
    pub campaign_fraction: f64,
    #[arg(long, default_value = "campaignx")]
    pub campaign_tag: String,
    /// Probability a human tweet retweets a bot.
    #[arg(long, default_value_t = 0.05)]
    pub human_retweet_rate: f64,
    /// Number of activity traces (0 = no trace file).
    #[arg(long, default_value_t = 0)]
    pub traces: usize,
    /// How many traces are planted dormant accounts.
    #[arg(long, default_value_t = 0)]
    pub dormant: usize,
    /// Trace windows as "start..end".
    #[arg(long)]
    pub window_a: Option<String>,
    #[arg(long)]
    pub window_b: Option<String>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Bundle directory containing manifest.json.
    pub bundle: PathBuf,
}

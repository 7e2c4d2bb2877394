//! Self-contained statistics kernels: descriptive moments, Welch's t-test,
//! Mann-Whitney U, Pearson correlation, and rank-frequency tables.
//!
//! Everything here is a pure function over slices; nothing holds shared
//! state, so concurrent use is safe.

mod descriptive;
mod mwu;
mod rankfreq;
pub mod special;
mod welch;

pub use descriptive::{correlation_matrix, mean_sd, pearson, Correlation, CorrelationMatrix};
pub use mwu::mann_whitney_u;
pub use rankfreq::{rank_frequency, RankEntry, RankFrequency};
pub use welch::{pooled_t, t_test, welch_t, TTestVariant};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("test needs at least {needed} observations per sample, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("both samples have zero variance; statistic undefined")]
    DegenerateSamples,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Which procedure produced a [`TestResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    WelchT,
    PooledT,
    MannWhitneyExact,
    MannWhitneyNormal,
}

/// Outcome of a two-sample hypothesis test. `p_value` is always two-sided.
/// A p-value that underflows double precision is reported as exactly 0 with
/// `underflow` set.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub n1: usize,
    pub n2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
    pub underflow: bool,
}

/// Per-feature summary of a bot-vs-human split: group moments plus both
/// test results. Descriptive sds use the population (divisor n) convention;
/// the tests use sample variance internally.
#[derive(Debug, Clone, Serialize)]
pub struct FeatureComparison {
    pub feature: String,
    pub mean_bot: f64,
    pub sd_bot: f64,
    pub mean_human: f64,
    pub sd_human: f64,
    pub welch: TestResult,
    pub mwu: TestResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupComparison {
    pub n_bots: usize,
    pub n_humans: usize,
    pub rows: Vec<FeatureComparison>,
}

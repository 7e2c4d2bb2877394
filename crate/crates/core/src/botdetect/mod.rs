//! Ten-feature bot/human classification: feature extraction from account
//! snapshots, log1p+z-score scaling, a deterministic full-batch
//! logistic-regression solver, stratified cross-validation, and whole
//! population scoring.

mod cv;
mod data;
mod features;
mod metrics;
mod population;
mod scaler;
mod train;

pub use cv::{cross_validate, cross_validate_with, stratified_folds, CVReport, FoldMetrics};
pub use data::{load_training_csv, DataError, TRAINING_HEADER};
pub use features::extract_features;
pub use metrics::{accuracy, auc_roc, MetricsError};
pub use population::{classify_population, PopulationOptions, PopulationRow, PopulationSummary};
pub use scaler::{fit_scaler, Scaler};
pub use train::{
    logistic_gradient, logistic_loss, predict_proba, sigmoid, train_logreg, Hyperparameters,
    LogisticTrainer, Model, ModelManifest, TrainError,
};

use serde::{Deserialize, Serialize};

pub const FEATURE_COUNT: usize = 10;
/// First five slots are counts, last five are binaries; this order is fixed
/// everywhere (model weights, CSV columns, scaling).
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "statuses_count",
    "followers_count",
    "friends_count",
    "favourites_count",
    "listed_count",
    "default_profile",
    "geo_enabled",
    "profile_use_background_image",
    "verified",
    "protected",
];
pub const COUNT_FEATURE_COUNT: usize = 5;

/// The ten numeric components in [`FEATURE_NAMES`] order. Binary slots hold
/// exactly 0 or 1. `complete` is false when any count field was absent from
/// the source snapshot (absent counts read as 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: [f64; FEATURE_COUNT],
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UserClass {
    Bot,
    Human,
}

impl UserClass {
    pub fn as_str(self) -> &'static str {
        match self {
            UserClass::Bot => "bot",
            UserClass::Human => "human",
        }
    }
}

impl std::str::FromStr for UserClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "bot" | "1" => Ok(UserClass::Bot),
            "human" | "0" => Ok(UserClass::Human),
            other => Err(format!("unknown class label: {other}")),
        }
    }
}

/// A labeled training point; label 1 = bot, 0 = human.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledExample {
    pub features: FeatureVector,
    pub label: u8,
    pub source_id: String,
}

impl LabeledExample {
    pub fn new(features: FeatureVector, label: u8, source_id: impl Into<String>) -> Self {
        debug_assert!(label <= 1);
        LabeledExample {
            features,
            label,
            source_id: source_id.into(),
        }
    }
}

/// Scoring surface the cross-validation harness trains against; any model
/// exposing a bot-probability per feature vector can slot in.
pub trait Scorer {
    fn score(&self, features: &FeatureVector) -> f64;
}

pub trait ScorerTrainer {
    type Output: Scorer;
    fn train(&self, examples: &[LabeledExample]) -> Result<Self::Output, TrainError>;
}

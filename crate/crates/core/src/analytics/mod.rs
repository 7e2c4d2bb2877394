//! Corpus analytics: per-minute timelines, entity/token/language rank
//! tables, the seven-distribution suite, bot-vs-human group comparisons and
//! correlation matrices, follower-growth deltas, and dormant-account
//! detection.
//!
//! Aggregation is map-reduce shaped: per-shard accumulators expose `absorb`
//! and commutative `merge`, and every product is recomputed identically
//! regardless of shard count or merge order.

mod aggregate;
mod compare;
mod deltas;
mod distributions;
mod dormancy;
mod ranks;
mod stoplist;
mod timeline;
mod tokenize;

pub use aggregate::{AnalyzeAccumulator, AnalyzeOptions, CampaignSplitSink};
pub use compare::{compare_groups, feature_correlations, ClassCorrelations, COMPARE_FEATURES};
pub use deltas::{
    bot_activity_summary, collect_retweet_events, follower_deltas, resolve_retweet_target,
    BotActivityRow, FollowerDelta, RetweetEvent,
};
pub use distributions::{distribution_suite, DistributionSuite, Histogram};
pub use dormancy::{
    creation_gap_candidates, detect_dormant, load_traces, DormancyFlag, DormancyParams,
    DormancyReport, Window,
};
pub use ranks::{language_distribution, rank_entities, EntityCounter, RankKind, RankTable};
pub use stoplist::Stoplist;
pub use timeline::{timeline, TimelineAcc, TimelineOptions, TimelineSeries};
pub use tokenize::tokenize;

use crate::botdetect::UserClass;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("class {class} is empty")]
    EmptyClass { class: &'static str },
    #[error("class {class} has {got} users; need at least {needed}")]
    ClassTooSmall {
        class: &'static str,
        got: usize,
        needed: usize,
    },
    #[error("window A must end before window B starts")]
    InvertedWindows,
    #[error("cannot read {path}: {source}")]
    TraceIo {
        path: String,
        source: std::io::Error,
    },
    #[error("trace line {line}: {detail}")]
    TraceParse { line: u64, detail: String },
    #[error(transparent)]
    Stats(#[from] crate::stats::StatsError),
}

/// user_id -> class map produced by classification (or loaded from a
/// partition file).
#[derive(Debug, Clone, Default)]
pub struct Partition {
    classes: HashMap<String, UserClass>,
}

impl Partition {
    pub fn new(classes: HashMap<String, UserClass>) -> Self {
        Partition { classes }
    }

    pub fn insert(&mut self, user_id: String, class: UserClass) {
        self.classes.insert(user_id, class);
    }

    pub fn class_of(&self, user_id: &str) -> Option<UserClass> {
        self.classes.get(user_id).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn count(&self, class: UserClass) -> usize {
        self.classes.values().filter(|&&c| c == class).count()
    }
}

impl FromIterator<(String, UserClass)> for Partition {
    fn from_iter<T: IntoIterator<Item = (String, UserClass)>>(iter: T) -> Self {
        Partition {
            classes: iter.into_iter().collect(),
        }
    }
}

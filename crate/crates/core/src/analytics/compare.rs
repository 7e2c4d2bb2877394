//! Bot-vs-human group statistics: per-feature moments with Welch and
//! Mann-Whitney tests, and per-class Pearson correlation matrices over the
//! count features.

use super::{AnalyticsError, Partition};
use crate::botdetect::UserClass;
use crate::corpus::{UserEntry, UserTable};
use crate::stats::{
    correlation_matrix, mann_whitney_u, mean_sd, t_test, CorrelationMatrix, FeatureComparison,
    GroupComparison, StatsError, TTestVariant, TestMethod, TestResult,
};
use serde::Serialize;

/// Compared features: the in-corpus tweet count plus the five snapshot
/// counts (from each user's last snapshot, absent counts read as 0).
pub const COMPARE_FEATURES: [&str; 6] = [
    "tweets_in_scope",
    "statuses_count",
    "followers_count",
    "friends_count",
    "favourites_count",
    "listed_count",
];

const CORRELATION_FEATURES: [&str; 5] = [
    "statuses_count",
    "followers_count",
    "friends_count",
    "favourites_count",
    "listed_count",
];

fn feature_value(entry: &UserEntry, feature: &str) -> f64 {
    let snap = &entry.last_snapshot;
    let count = |v: Option<u64>| v.map(|c| c as f64).unwrap_or(0.0);
    match feature {
        "tweets_in_scope" => entry.tweet_count_in_corpus as f64,
        "statuses_count" => count(snap.statuses_count),
        "followers_count" => count(snap.followers_count),
        "friends_count" => count(snap.friends_count),
        "favourites_count" => count(snap.favourites_count),
        "listed_count" => count(snap.listed_count),
        other => unreachable!("unknown feature {other}"),
    }
}

/// Per-class value vectors in sorted user_id order, so float summation
/// order is deterministic.
fn class_values(
    table: &UserTable,
    partition: &Partition,
    feature: &str,
) -> (Vec<f64>, Vec<f64>) {
    let mut bots = Vec::new();
    let mut humans = Vec::new();
    for (user_id, entry) in table.iter_sorted() {
        match partition.class_of(user_id) {
            Some(UserClass::Bot) => bots.push(feature_value(entry, feature)),
            Some(UserClass::Human) => humans.push(feature_value(entry, feature)),
            None => {}
        }
    }
    (bots, humans)
}

fn degenerate_result(method: TestMethod, n1: usize, n2: usize) -> TestResult {
    // Both samples constant: no evidence of a difference; report the null
    // outcome rather than aborting the whole comparison bundle.
    TestResult {
        statistic: 0.0,
        p_value: 1.0,
        method,
        n1,
        n2,
        df: None,
        underflow: false,
    }
}

/// Compare bot and human groups feature by feature. Users absent from the
/// partition are excluded. Errors when either class is empty.
pub fn compare_groups(
    table: &UserTable,
    partition: &Partition,
    variant: TTestVariant,
) -> Result<GroupComparison, AnalyticsError> {
    let (bots_probe, humans_probe) = class_values(table, partition, "tweets_in_scope");
    if bots_probe.is_empty() {
        return Err(AnalyticsError::EmptyClass { class: "bot" });
    }
    if humans_probe.is_empty() {
        return Err(AnalyticsError::EmptyClass { class: "human" });
    }
    let mut rows = Vec::with_capacity(COMPARE_FEATURES.len());
    for feature in COMPARE_FEATURES {
        let (bots, humans) = class_values(table, partition, feature);
        let (mean_bot, sd_bot) = mean_sd(&bots)?;
        let (mean_human, sd_human) = mean_sd(&humans)?;
        let method = match variant {
            TTestVariant::Welch => TestMethod::WelchT,
            TTestVariant::Pooled => TestMethod::PooledT,
        };
        let welch = match t_test(&bots, &humans, variant) {
            Ok(r) => r,
            Err(StatsError::DegenerateSamples) => {
                degenerate_result(method, bots.len(), humans.len())
            }
            Err(e) => return Err(e.into()),
        };
        let mwu = mann_whitney_u(&bots, &humans)?;
        rows.push(FeatureComparison {
            feature: feature.to_string(),
            mean_bot,
            sd_bot,
            mean_human,
            sd_human,
            welch,
            mwu,
        });
    }
    Ok(GroupComparison {
        n_bots: bots_probe.len(),
        n_humans: humans_probe.len(),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassCorrelations {
    pub bots: CorrelationMatrix,
    pub humans: CorrelationMatrix,
}

/// 5x5 Pearson matrices over the count features, one per class. Binary
/// features are excluded (near-constant indicators make the coefficient
/// uninformative). Each class needs at least two users.
pub fn feature_correlations(
    table: &UserTable,
    partition: &Partition,
) -> Result<ClassCorrelations, AnalyticsError> {
    let matrix_for = |class: UserClass,
                      class_name: &'static str|
     -> Result<CorrelationMatrix, AnalyticsError> {
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); CORRELATION_FEATURES.len()];
        for (user_id, entry) in table.iter_sorted() {
            if partition.class_of(user_id) == Some(class) {
                for (j, feature) in CORRELATION_FEATURES.iter().enumerate() {
                    columns[j].push(feature_value(entry, feature));
                }
            }
        }
        let n = columns[0].len();
        if n < 2 {
            return Err(AnalyticsError::ClassTooSmall {
                class: class_name,
                got: n,
                needed: 2,
            });
        }
        Ok(correlation_matrix(&CORRELATION_FEATURES, &columns)?)
    };
    Ok(ClassCorrelations {
        bots: matrix_for(UserClass::Bot, "bot")?,
        humans: matrix_for(UserClass::Human, "human")?,
    })
}

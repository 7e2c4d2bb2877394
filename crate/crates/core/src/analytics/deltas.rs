//! Follower growth of bots across the observation window, ranked by how
//! often humans retweeted them.

use super::Partition;
use crate::botdetect::UserClass;
use crate::corpus::{TweetRecord, UserTable};
use serde::Serialize;
use std::collections::HashMap;

/// One retweet edge observed in the corpus, author side already known.
#[derive(Debug, Clone, Serialize)]
pub struct RetweetEvent {
    pub author_user_id: String,
    pub target: RetweetTarget,
}

#[derive(Debug, Clone, Serialize)]
pub enum RetweetTarget {
    /// Explicit linkage field from the archive.
    UserId(String),
    /// Leading "RT @name" whose name appeared in mentions; resolved against
    /// the screen-name index at the end of the pass.
    ScreenName(String),
}

/// Extract the retweet edge from a record, if any. Explicit linkage wins
/// over the text prefix.
pub fn resolve_retweet_target(record: &TweetRecord) -> Option<RetweetEvent> {
    if let Some(target_id) = &record.retweeted_user_id {
        return Some(RetweetEvent {
            author_user_id: record.user.user_id.clone(),
            target: RetweetTarget::UserId(target_id.clone()),
        });
    }
    record.rt_prefix_screen_name().map(|name| RetweetEvent {
        author_user_id: record.user.user_id.clone(),
        target: RetweetTarget::ScreenName(name),
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FollowerDelta {
    pub user_id: String,
    pub followers_before: u64,
    pub followers_after: u64,
    pub tweets_in_scope: u64,
    pub retweets_received_from_humans: u64,
}

/// Count, per bot, the retweets authored by classified humans whose target
/// is that bot; emit the top-k bots by that count (ties by user_id
/// ascending) with followers at first/last snapshot.
pub fn follower_deltas(
    events: &[RetweetEvent],
    table: &UserTable,
    partition: &Partition,
    k: usize,
) -> Vec<FollowerDelta> {
    let screen_names = table.screen_name_index();
    let mut received: HashMap<&str, u64> = HashMap::new();
    for event in events {
        if partition.class_of(&event.author_user_id) != Some(UserClass::Human) {
            continue;
        }
        let target_id: Option<&str> = match &event.target {
            RetweetTarget::UserId(id) => Some(id.as_str()),
            RetweetTarget::ScreenName(name) => screen_names.get(name).map(|s| s.as_str()),
        };
        let Some(target_id) = target_id else { continue };
        if partition.class_of(target_id) == Some(UserClass::Bot) {
            *received.entry(target_id).or_insert(0) += 1;
        }
    }

    let mut rows: Vec<FollowerDelta> = table
        .iter_sorted()
        .into_iter()
        .filter(|(user_id, _)| partition.class_of(user_id) == Some(UserClass::Bot))
        .map(|(user_id, entry)| FollowerDelta {
            user_id: user_id.clone(),
            followers_before: entry.first_snapshot.followers_count.unwrap_or(0),
            followers_after: entry.last_snapshot.followers_count.unwrap_or(0),
            tweets_in_scope: entry.tweet_count_in_corpus,
            retweets_received_from_humans: received.get(user_id.as_str()).copied().unwrap_or(0),
        })
        .collect();
    rows.sort_by(|a, b| {
        b.retweets_received_from_humans
            .cmp(&a.retweets_received_from_humans)
            .then_with(|| a.user_id.cmp(&b.user_id))
    });
    rows.truncate(k);
    rows
}

/// Collect retweet events from an in-memory corpus slice.
pub fn collect_retweet_events(records: &[TweetRecord]) -> Vec<RetweetEvent> {
    records.iter().filter_map(resolve_retweet_target).collect()
}

/// Per-bot activity summary row: the most active bots with their account
/// features as last observed.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BotActivityRow {
    pub user_id: String,
    pub screen_name: String,
    pub tweets_in_scope: u64,
    pub statuses_count: u64,
    pub followers_count: u64,
    pub friends_count: u64,
    pub favourites_count: u64,
    pub listed_count: u64,
}

/// Top-k bots by in-corpus tweet count (ties by user_id ascending), with
/// last-snapshot features.
pub fn bot_activity_summary(
    table: &UserTable,
    partition: &Partition,
    k: usize,
) -> Vec<BotActivityRow> {
    let count = |v: Option<u64>| v.unwrap_or(0);
    let mut rows: Vec<BotActivityRow> = table
        .iter_sorted()
        .into_iter()
        .filter(|(user_id, _)| partition.class_of(user_id) == Some(UserClass::Bot))
        .map(|(user_id, entry)| {
            let snap = &entry.last_snapshot;
            BotActivityRow {
                user_id: user_id.clone(),
                screen_name: snap.screen_name.clone(),
                tweets_in_scope: entry.tweet_count_in_corpus,
                statuses_count: count(snap.statuses_count),
                followers_count: count(snap.followers_count),
                friends_count: count(snap.friends_count),
                favourites_count: count(snap.favourites_count),
                listed_count: count(snap.listed_count),
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.tweets_in_scope
            .cmp(&a.tweets_in_scope)
            .then_with(|| a.user_id.cmp(&b.user_id))
    });
    rows.truncate(k);
    rows
}

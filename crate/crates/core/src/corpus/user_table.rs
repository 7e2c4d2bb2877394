//! Per-user snapshot series derived from a corpus: earliest/latest observed
//! snapshot, tweet counts, and timestamp lists. Construction is a
//! commutative, associative merge so shard tables can be combined in any
//! order.

use super::{TweetRecord, UserSnapshot};
use std::collections::HashMap;

/// Snapshot bookkeeping for one user. First/last are chosen by
/// `(observed_at, tweet_id)` with the lexicographically smaller tweet_id
/// winning the "first" slot on timestamp ties.
#[derive(Debug, Clone, PartialEq)]
pub struct UserEntry {
    pub first_snapshot: UserSnapshot,
    pub last_snapshot: UserSnapshot,
    pub first_tweet_id: String,
    pub last_tweet_id: String,
    pub tweet_count_in_corpus: u64,
    /// Sorted ascending once the table is finished.
    pub tweet_timestamps: Vec<i64>,
}

impl UserEntry {
    fn new(snapshot: UserSnapshot, tweet_id: &str) -> Self {
        UserEntry {
            first_tweet_id: tweet_id.to_string(),
            last_tweet_id: tweet_id.to_string(),
            tweet_count_in_corpus: 1,
            tweet_timestamps: vec![snapshot.observed_at],
            last_snapshot: snapshot.clone(),
            first_snapshot: snapshot,
        }
    }

    fn observe(&mut self, snapshot: &UserSnapshot, tweet_id: &str) {
        let key = (snapshot.observed_at, tweet_id);
        if key < (self.first_snapshot.observed_at, self.first_tweet_id.as_str()) {
            self.first_snapshot = snapshot.clone();
            self.first_tweet_id = tweet_id.to_string();
        }
        if key > (self.last_snapshot.observed_at, self.last_tweet_id.as_str()) {
            self.last_snapshot = snapshot.clone();
            self.last_tweet_id = tweet_id.to_string();
        }
        self.tweet_count_in_corpus += 1;
        self.tweet_timestamps.push(snapshot.observed_at);
    }

    fn merge(&mut self, other: UserEntry) {
        let other_first = (
            other.first_snapshot.observed_at,
            other.first_tweet_id.as_str(),
        );
        if other_first < (self.first_snapshot.observed_at, self.first_tweet_id.as_str()) {
            self.first_snapshot = other.first_snapshot;
            self.first_tweet_id = other.first_tweet_id;
        }
        let other_last = (other.last_snapshot.observed_at, other.last_tweet_id.as_str());
        if other_last > (self.last_snapshot.observed_at, self.last_tweet_id.as_str()) {
            self.last_snapshot = other.last_snapshot;
            self.last_tweet_id = other.last_tweet_id;
        }
        self.tweet_count_in_corpus += other.tweet_count_in_corpus;
        self.tweet_timestamps.extend(other.tweet_timestamps);
    }
}

/// Accumulator form of the table; call [`UserTableBuilder::finish`] to sort
/// timestamp lists and seal it.
#[derive(Debug, Default, Clone)]
pub struct UserTableBuilder {
    entries: HashMap<String, UserEntry>,
}

impl UserTableBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn absorb(&mut self, record: &TweetRecord) {
        match self.entries.get_mut(&record.user.user_id) {
            Some(entry) => entry.observe(&record.user, &record.tweet_id),
            None => {
                self.entries.insert(
                    record.user.user_id.clone(),
                    UserEntry::new(record.user.clone(), &record.tweet_id),
                );
            }
        }
    }

    /// Commutative, associative shard merge.
    pub fn merge(&mut self, other: UserTableBuilder) {
        for (user_id, entry) in other.entries {
            match self.entries.get_mut(&user_id) {
                Some(existing) => existing.merge(entry),
                None => {
                    self.entries.insert(user_id, entry);
                }
            }
        }
    }

    pub fn finish(mut self) -> UserTable {
        for entry in self.entries.values_mut() {
            entry.tweet_timestamps.sort_unstable();
        }
        UserTable {
            entries: self.entries,
        }
    }
}

/// One entry per distinct user_id observed in a corpus.
#[derive(Debug, Clone, Default)]
pub struct UserTable {
    entries: HashMap<String, UserEntry>,
}

impl UserTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, user_id: &str) -> Option<&UserEntry> {
        self.entries.get(user_id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &UserEntry)> {
        self.entries.iter()
    }

    /// Entries ordered by user_id; use this wherever output determinism or
    /// float summation order matters.
    pub fn iter_sorted(&self) -> Vec<(&String, &UserEntry)> {
        let mut items: Vec<_> = self.entries.iter().collect();
        items.sort_by(|a, b| a.0.cmp(b.0));
        items
    }

    pub fn total_tweets(&self) -> u64 {
        self.entries.values().map(|e| e.tweet_count_in_corpus).sum()
    }

    /// Lowercased screen_name -> user_id map from last snapshots. Collisions
    /// resolve to the lexicographically smallest user_id.
    pub fn screen_name_index(&self) -> HashMap<String, String> {
        let mut index: HashMap<String, String> = HashMap::new();
        for (user_id, entry) in &self.entries {
            let name = entry.last_snapshot.screen_name.clone();
            if name.is_empty() {
                continue;
            }
            match index.get_mut(&name) {
                Some(existing) if existing.as_str() <= user_id.as_str() => {}
                Some(existing) => *existing = user_id.clone(),
                None => {
                    index.insert(name, user_id.clone());
                }
            }
        }
        index
    }
}

/// Build the per-user table from an in-memory corpus slice.
pub fn build_user_table(records: &[TweetRecord]) -> UserTable {
    let mut builder = UserTableBuilder::new();
    for record in records {
        builder.absorb(record);
    }
    builder.finish()
}

//! Entity frequency counting and top-k rank tables.
//!
//! Hashtags, mentions, URLs, and tweet tokens count per occurrence (a tag
//! used twice in one tweet counts twice). Profile tokens count each distinct
//! user's description once, read from that user's latest snapshot. Languages
//! count one per tweet, "und" included.

use super::stoplist::Stoplist;
use super::tokenize::tokenize;
use crate::corpus::TweetRecord;
use crate::stats::{rank_frequency, RankFrequency};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankKind {
    Hashtag,
    Mention,
    Url,
    Token,
    ProfileToken,
    Language,
}

impl RankKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RankKind::Hashtag => "hashtag",
            RankKind::Mention => "mention",
            RankKind::Url => "url",
            RankKind::Token => "token",
            RankKind::ProfileToken => "profile_token",
            RankKind::Language => "language",
        }
    }
}

/// Ordered (entity, count) rows, counts nonincreasing, entity-ascending
/// tie-break, truncated to the requested cutoff.
#[derive(Debug, Clone, Serialize)]
pub struct RankTable {
    pub kind: RankKind,
    pub k: usize,
    pub rows: Vec<(String, u64)>,
}

impl RankTable {
    fn from_counts(kind: RankKind, counts: &HashMap<String, u64>, k: usize) -> Self {
        let ranked = rank_frequency(counts);
        RankTable {
            kind,
            k,
            rows: ranked
                .entries
                .into_iter()
                .take(k)
                .map(|e| (e.entity, e.count))
                .collect(),
        }
    }
}

/// One-pass counter for every entity kind; `merge` is commutative and
/// associative so shard counters combine in any order.
#[derive(Debug, Clone)]
pub struct EntityCounter {
    stoplist: Stoplist,
    pub hashtags: HashMap<String, u64>,
    pub mentions: HashMap<String, u64>,
    pub urls: HashMap<String, u64>,
    pub tokens: HashMap<String, u64>,
    pub languages: HashMap<String, u64>,
    /// user_id -> (observed_at, tweet_id, description); latest wins.
    profiles: HashMap<String, (i64, String, String)>,
    pub total_tokens: u64,
}

impl EntityCounter {
    pub fn new(stoplist: Stoplist) -> Self {
        EntityCounter {
            stoplist,
            hashtags: HashMap::new(),
            mentions: HashMap::new(),
            urls: HashMap::new(),
            tokens: HashMap::new(),
            languages: HashMap::new(),
            profiles: HashMap::new(),
            total_tokens: 0,
        }
    }

    pub fn absorb(&mut self, record: &TweetRecord) {
        for tag in &record.hashtags {
            *self.hashtags.entry(tag.clone()).or_insert(0) += 1;
        }
        for name in &record.mentions {
            *self.mentions.entry(name.clone()).or_insert(0) += 1;
        }
        for url in &record.urls {
            *self.urls.entry(url.clone()).or_insert(0) += 1;
        }
        for token in tokenize(&record.text, &self.stoplist) {
            *self.tokens.entry(token).or_insert(0) += 1;
            self.total_tokens += 1;
        }
        *self.languages.entry(record.lang.clone()).or_insert(0) += 1;

        let key = (record.created_at, record.tweet_id.clone());
        match self.profiles.get_mut(&record.user.user_id) {
            Some(existing) => {
                if (existing.0, existing.1.as_str()) < (key.0, key.1.as_str()) {
                    *existing = (key.0, key.1, record.user.description.clone());
                }
            }
            None => {
                self.profiles.insert(
                    record.user.user_id.clone(),
                    (key.0, key.1, record.user.description.clone()),
                );
            }
        }
    }

    pub fn merge(&mut self, other: EntityCounter) {
        for (map, theirs) in [
            (&mut self.hashtags, other.hashtags),
            (&mut self.mentions, other.mentions),
            (&mut self.urls, other.urls),
            (&mut self.tokens, other.tokens),
            (&mut self.languages, other.languages),
        ] {
            for (entity, count) in theirs {
                *map.entry(entity).or_insert(0) += count;
            }
        }
        self.total_tokens += other.total_tokens;
        for (user, (ts, tweet_id, desc)) in other.profiles {
            match self.profiles.get_mut(&user) {
                Some(existing) => {
                    if (existing.0, existing.1.as_str()) < (ts, tweet_id.as_str()) {
                        *existing = (ts, tweet_id, desc);
                    }
                }
                None => {
                    self.profiles.insert(user, (ts, tweet_id, desc));
                }
            }
        }
    }

    /// Token counts over deduplicated user descriptions.
    pub fn profile_token_counts(&self) -> HashMap<String, u64> {
        let mut counts = HashMap::new();
        for (_, _, description) in self.profiles.values() {
            for token in tokenize(description, &self.stoplist) {
                *counts.entry(token).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn distinct_users(&self) -> usize {
        self.profiles.len()
    }

    pub fn table(&self, kind: RankKind, k: usize) -> RankTable {
        match kind {
            RankKind::Hashtag => RankTable::from_counts(kind, &self.hashtags, k),
            RankKind::Mention => RankTable::from_counts(kind, &self.mentions, k),
            RankKind::Url => RankTable::from_counts(kind, &self.urls, k),
            RankKind::Token => RankTable::from_counts(kind, &self.tokens, k),
            RankKind::ProfileToken => {
                RankTable::from_counts(kind, &self.profile_token_counts(), k)
            }
            RankKind::Language => RankTable::from_counts(kind, &self.languages, k),
        }
    }

    pub fn frequencies(&self, kind: RankKind) -> RankFrequency {
        match kind {
            RankKind::Hashtag => rank_frequency(&self.hashtags),
            RankKind::Mention => rank_frequency(&self.mentions),
            RankKind::Url => rank_frequency(&self.urls),
            RankKind::Token => rank_frequency(&self.tokens),
            RankKind::ProfileToken => rank_frequency(&self.profile_token_counts()),
            RankKind::Language => rank_frequency(&self.languages),
        }
    }
}

/// Top-k table of one entity kind over a corpus slice.
pub fn rank_entities(
    records: &[TweetRecord],
    kind: RankKind,
    k: usize,
    stoplist: &Stoplist,
) -> RankTable {
    assert!(k >= 1, "cutoff must be at least 1");
    let mut counter = EntityCounter::new(stoplist.clone());
    for record in records {
        counter.absorb(record);
    }
    counter.table(kind, k)
}

/// Full per-tweet language counts; "und" reported, never dropped.
pub fn language_distribution(records: &[TweetRecord]) -> RankTable {
    let mut counter = EntityCounter::new(Stoplist::empty());
    for record in records {
        *counter.languages.entry(record.lang.clone()).or_insert(0) += 1;
    }
    let k = counter.languages.len().max(1);
    counter.table(RankKind::Language, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_record;

    fn record(id: &str, body: &str) -> TweetRecord {
        parse_record(
            &format!(r#"{{"id":"{id}","created_at":0,"text":"{body}","user":{{"id":"u1"}}}}"#),
            1,
        )
        .unwrap()
    }

    fn record_full(id: &str, user: &str, ts: i64, lang: &str, desc: &str) -> TweetRecord {
        parse_record(
            &format!(
                r#"{{"id":"{id}","created_at":{ts},"text":"x","lang":"{lang}","user":{{"id":"{user}","description":"{desc}"}}}}"#
            ),
            1,
        )
        .unwrap()
    }

    #[test]
    fn hashtags_count_per_occurrence() {
        let records = vec![record("a", "#macron wins"), record("b", "#macron again")];
        let table = rank_entities(&records, RankKind::Hashtag, 10, &Stoplist::bundled());
        assert_eq!(table.rows, vec![("macron".to_string(), 2)]);
    }

    #[test]
    fn campaign_tag_counts_equal_subcorpus_size() {
        let records: Vec<TweetRecord> = (0..25)
            .map(|i| record(&format!("t{i}"), "all in #macronleaks today"))
            .collect();
        let table = rank_entities(&records, RankKind::Hashtag, 5, &Stoplist::bundled());
        assert_eq!(table.rows[0], ("macronleaks".to_string(), 25));
    }

    #[test]
    fn fifty_tweet_fixture_matches_naive_recount() {
        let mut rng = crate::rng::SeededRng::new(606);
        let vocab = ["macron", "lepen", "debat", "vote", "fraude"];
        let records: Vec<TweetRecord> = (0..50)
            .map(|i| {
                let t1 = vocab[rng.below(5) as usize];
                let t2 = vocab[rng.below(5) as usize];
                record(&format!("t{i}"), &format!("#{t1} and #{t2} plus #{t1}"))
            })
            .collect();
        let table = rank_entities(&records, RankKind::Hashtag, 100, &Stoplist::bundled());
        // Independent recount straight off the records.
        let mut naive: HashMap<String, u64> = HashMap::new();
        for r in &records {
            for t in &r.hashtags {
                *naive.entry(t.clone()).or_insert(0) += 1;
            }
        }
        for (entity, count) in &table.rows {
            assert_eq!(naive[entity], *count);
        }
        assert_eq!(table.rows.len(), naive.len());
        let mut prev = u64::MAX;
        for (_, c) in &table.rows {
            assert!(*c <= prev);
            prev = *c;
        }
    }

    #[test]
    fn profile_tokens_deduplicate_users() {
        // u1 appears twice; the later description must be the one counted,
        // and only once.
        let records = vec![
            record_full("t1", "u1", 10, "fr", "patriot maga"),
            record_full("t2", "u1", 20, "fr", "conservative maga"),
            record_full("t3", "u2", 15, "en", "maga"),
        ];
        let table = rank_entities(&records, RankKind::ProfileToken, 10, &Stoplist::bundled());
        let as_map: HashMap<_, _> = table.rows.iter().cloned().collect();
        assert_eq!(as_map["maga"], 2);
        assert_eq!(as_map["conservative"], 1);
        assert!(!as_map.contains_key("patriot"));
    }

    #[test]
    fn languages_count_per_tweet_with_und() {
        let records = vec![
            record_full("a", "u1", 0, "en", ""),
            record_full("b", "u2", 0, "en", ""),
            record_full("c", "u3", 0, "en", ""),
            record_full("d", "u4", 0, "fr", ""),
            record_full("e", "u5", 0, "fr", ""),
            record("f", "no lang here"),
        ];
        let table = language_distribution(&records);
        assert_eq!(
            table.rows,
            vec![
                ("en".to_string(), 3),
                ("fr".to_string(), 2),
                ("und".to_string(), 1)
            ]
        );
    }

    #[test]
    fn shard_merge_equals_single_counter() {
        let records: Vec<TweetRecord> = (0..40)
            .map(|i| record_full(&format!("t{i}"), &format!("u{}", i % 5), i, "fr", "desc ici"))
            .collect();
        let mut whole = EntityCounter::new(Stoplist::bundled());
        for r in &records {
            whole.absorb(r);
        }
        let mut a = EntityCounter::new(Stoplist::bundled());
        let mut b = EntityCounter::new(Stoplist::bundled());
        for (i, r) in records.iter().enumerate() {
            if i % 3 == 0 {
                a.absorb(r);
            } else {
                b.absorb(r);
            }
        }
        b.merge(a);
        assert_eq!(whole.languages, b.languages);
        assert_eq!(whole.tokens, b.tokens);
        assert_eq!(whole.total_tokens, b.total_tokens);
        assert_eq!(whole.profile_token_counts(), b.profile_token_counts());
    }
}

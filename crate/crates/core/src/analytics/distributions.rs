//! The seven-distribution characterization of a corpus:
//!   A per-user tweet counts, B tweet-token frequencies, C profile-token
//!   frequencies (deduplicated users), D language counts, and E/F/G distinct
//!   hashtag/mention/URL frequencies. Each carries log-log plot data.

use super::ranks::{EntityCounter, RankKind};
use super::stoplist::Stoplist;
use crate::corpus::TweetRecord;
use crate::stats::RankFrequency;
use serde::Serialize;
use std::collections::HashMap;

/// Empirical (value, frequency) pairs, ascending by value.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Histogram {
    pub pairs: Vec<(u64, u64)>,
}

impl Histogram {
    pub fn from_values<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        let mut pairs: Vec<(u64, u64)> = counts.into_iter().collect();
        pairs.sort_unstable();
        Histogram { pairs }
    }

    /// Total observations (sum of frequencies).
    pub fn total(&self) -> u64 {
        self.pairs.iter().map(|(_, f)| f).sum()
    }

    /// Weighted sum of values (e.g. total tweets for a tweets-per-user
    /// histogram).
    pub fn mass(&self) -> u64 {
        self.pairs.iter().map(|(v, f)| v * f).sum()
    }

    pub fn log_log_points(&self) -> Vec<(f64, f64)> {
        self.pairs
            .iter()
            .filter(|(v, f)| *v > 0 && *f > 0)
            .map(|(v, f)| ((*v as f64).log10(), (*f as f64).log10()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistributionSuite {
    /// A: distribution of the number of tweets posted by each user.
    pub tweets_per_user: Histogram,
    /// B: tweet token frequencies.
    pub tweet_tokens: RankFrequency,
    /// C: profile-description token frequencies, users deduplicated.
    pub profile_tokens: RankFrequency,
    /// D: language counts.
    pub languages: RankFrequency,
    /// E: distinct hashtag frequencies.
    pub hashtags: RankFrequency,
    /// F: distinct mention frequencies.
    pub mentions: RankFrequency,
    /// G: distinct URL frequencies.
    pub urls: RankFrequency,
}

impl DistributionSuite {
    /// (letter, file-stem) labels in canonical order.
    pub const LABELS: [(&'static str, &'static str); 7] = [
        ("A", "tweets_per_user"),
        ("B", "tweet_tokens"),
        ("C", "profile_tokens"),
        ("D", "languages"),
        ("E", "hashtags"),
        ("F", "mentions"),
        ("G", "urls"),
    ];

    pub fn all_nonempty(&self) -> bool {
        !self.tweets_per_user.is_empty()
            && !self.tweet_tokens.is_empty()
            && !self.profile_tokens.is_empty()
            && !self.languages.is_empty()
            && !self.hashtags.is_empty()
            && !self.mentions.is_empty()
            && !self.urls.is_empty()
    }
}

/// Build the suite from an entity counter plus per-user tweet counts; used
/// by the one-pass aggregator.
pub fn suite_from_parts(
    counter: &EntityCounter,
    tweets_per_user: impl IntoIterator<Item = u64>,
) -> DistributionSuite {
    DistributionSuite {
        tweets_per_user: Histogram::from_values(tweets_per_user),
        tweet_tokens: counter.frequencies(RankKind::Token),
        profile_tokens: counter.frequencies(RankKind::ProfileToken),
        languages: counter.frequencies(RankKind::Language),
        hashtags: counter.frequencies(RankKind::Hashtag),
        mentions: counter.frequencies(RankKind::Mention),
        urls: counter.frequencies(RankKind::Url),
    }
}

/// Compute all seven distributions for a corpus slice.
pub fn distribution_suite(records: &[TweetRecord], stoplist: &Stoplist) -> DistributionSuite {
    let mut counter = EntityCounter::new(stoplist.clone());
    let mut per_user: HashMap<&str, u64> = HashMap::new();
    for record in records {
        counter.absorb(record);
        *per_user.entry(record.user.user_id.as_str()).or_insert(0) += 1;
    }
    suite_from_parts(&counter, per_user.into_values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::tokenize;
    use crate::corpus::parse_record;

    fn record(id: &str, user: &str, text: &str, lang: &str) -> TweetRecord {
        parse_record(
            &format!(
                r#"{{"id":"{id}","created_at":0,"text":"{text}","lang":"{lang}","user":{{"id":"{user}","description":"profile words here"}}}}"#
            ),
            1,
        )
        .unwrap()
    }

    #[test]
    fn single_user_five_tweets() {
        let records: Vec<TweetRecord> = (0..5)
            .map(|i| record(&format!("t{i}"), "u1", "hello world", "en"))
            .collect();
        let suite = distribution_suite(&records, &Stoplist::bundled());
        assert_eq!(suite.tweets_per_user.pairs, vec![(5, 1)]);
    }

    #[test]
    fn token_mass_is_conserved() {
        let stoplist = Stoplist::bundled();
        let records: Vec<TweetRecord> = (0..30)
            .map(|i| {
                record(
                    &format!("t{i}"),
                    &format!("u{}", i % 4),
                    "vote macron #tag election vote",
                    "fr",
                )
            })
            .collect();
        let suite = distribution_suite(&records, &stoplist);
        let expected: u64 = records
            .iter()
            .map(|r| tokenize(&r.text, &stoplist).len() as u64)
            .sum();
        assert_eq!(suite.tweet_tokens.total_mass(), expected);
    }

    #[test]
    fn suite_matches_independent_recount() {
        let mut rng = crate::rng::SeededRng::new(44);
        let langs = ["en", "fr", "de"];
        let words = ["macron", "leaks", "vote", "fraude", "campaign"];
        let records: Vec<TweetRecord> = (0..300)
            .map(|i| {
                let w1 = words[rng.below(5) as usize];
                let w2 = words[rng.below(5) as usize];
                record(
                    &format!("t{i}"),
                    &format!("u{}", rng.below(40)),
                    &format!("{w1} {w2} #{w1} @m_{w2} https://l.ink/{w1}"),
                    langs[rng.below(3) as usize],
                )
            })
            .collect();
        let stoplist = Stoplist::bundled();
        let suite = distribution_suite(&records, &stoplist);

        // Naive single-threaded recounts.
        let mut tweets_per_user: HashMap<String, u64> = HashMap::new();
        let mut hashtags: HashMap<String, u64> = HashMap::new();
        let mut mentions: HashMap<String, u64> = HashMap::new();
        let mut urls: HashMap<String, u64> = HashMap::new();
        let mut langs_n: HashMap<String, u64> = HashMap::new();
        let mut tokens: HashMap<String, u64> = HashMap::new();
        for r in &records {
            *tweets_per_user.entry(r.user.user_id.clone()).or_insert(0) += 1;
            for t in &r.hashtags {
                *hashtags.entry(t.clone()).or_insert(0) += 1;
            }
            for m in &r.mentions {
                *mentions.entry(m.clone()).or_insert(0) += 1;
            }
            for u in &r.urls {
                *urls.entry(u.clone()).or_insert(0) += 1;
            }
            *langs_n.entry(r.lang.clone()).or_insert(0) += 1;
            for t in tokenize(&r.text, &stoplist) {
                *tokens.entry(t).or_insert(0) += 1;
            }
        }
        let expect_hist = Histogram::from_values(tweets_per_user.into_values());
        assert_eq!(suite.tweets_per_user.pairs, expect_hist.pairs);
        assert_eq!(suite.hashtags.entries, crate::stats::rank_frequency(&hashtags).entries);
        assert_eq!(suite.mentions.entries, crate::stats::rank_frequency(&mentions).entries);
        assert_eq!(suite.urls.entries, crate::stats::rank_frequency(&urls).entries);
        assert_eq!(suite.languages.entries, crate::stats::rank_frequency(&langs_n).entries);
        assert_eq!(suite.tweet_tokens.entries, crate::stats::rank_frequency(&tokens).entries);
        assert!(suite.all_nonempty());
    }

    #[test]
    fn histogram_orders_and_totals() {
        let h = Histogram::from_values([5, 1, 1, 3, 1]);
        assert_eq!(h.pairs, vec![(1, 3), (3, 1), (5, 1)]);
        assert_eq!(h.total(), 5);
        assert_eq!(h.mass(), 11);
        assert_eq!(h.log_log_points().len(), 3);
    }
}

//! Streaming ingestion of line-delimited tweet archives: record parsing and
//! normalization, gzip-aware multi-file scans, campaign sub-corpus filtering,
//! and per-user snapshot tables.

mod filter;
mod parse;
mod stream;
mod user_table;

pub use filter::{filter_campaign, CampaignFilter, FilterError, MatchFields};
pub use parse::{parse_record, ParseFailure, ParseReason};
pub use stream::{
    load_corpus, scan_corpus, scan_corpus_with_stats, CorpusError, IngestOptions, IngestReport,
    RecordSink, ScanStats,
};
pub use user_table::{build_user_table, UserEntry, UserTable, UserTableBuilder};

use serde::Serialize;

/// The ten raw account fields as observed at one tweet's timestamp, plus
/// identity and description. Count fields are `None` when the archive lacked
/// them; downstream feature extraction marks such snapshots incomplete
/// instead of silently imputing.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct UserSnapshot {
    pub user_id: String,
    pub screen_name: String,
    pub description: String,
    pub created_at_account: Option<i64>,
    pub statuses_count: Option<u64>,
    pub followers_count: Option<u64>,
    pub friends_count: Option<u64>,
    pub favourites_count: Option<u64>,
    pub listed_count: Option<u64>,
    pub default_profile: bool,
    pub geo_enabled: bool,
    pub profile_use_background_image: bool,
    pub verified: bool,
    pub protected: bool,
    /// Copied from the enclosing tweet's created_at.
    pub observed_at: i64,
}

impl UserSnapshot {
    /// True when all five count fields were present in the archive.
    pub fn counts_complete(&self) -> bool {
        self.statuses_count.is_some()
            && self.followers_count.is_some()
            && self.friends_count.is_some()
            && self.favourites_count.is_some()
            && self.listed_count.is_some()
    }
}

/// One archived tweet after normalization: hashtags/mentions lowercased and
/// stripped of their sigils, lang defaulted to "und", entities extracted
/// from the text when the archive carries none.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub created_at: i64,
    pub text: String,
    pub user: UserSnapshot,
    pub hashtags: Vec<String>,
    pub mentions: Vec<String>,
    pub urls: Vec<String>,
    pub lang: String,
    /// Original author, present iff `retweeted_tweet_id` is present.
    pub retweeted_user_id: Option<String>,
    pub retweeted_tweet_id: Option<String>,
}

impl TweetRecord {
    /// Screen name from a leading "RT @name" prefix, lowercased, but only
    /// when that name also appears in the tweet's mentions.
    pub fn rt_prefix_screen_name(&self) -> Option<String> {
        let t = self.text.trim_start();
        let bytes = t.as_bytes();
        if bytes.len() < 4 || !bytes[..3].eq_ignore_ascii_case(b"rt ") || bytes[3] != b'@' {
            return None;
        }
        let rest = &t[4..];
        let end = rest
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        let name = rest[..end].to_lowercase();
        if self.mentions.contains(&name) {
            Some(name)
        } else {
            None
        }
    }

    /// Explicit retweet linkage, or a leading RT prefix.
    pub fn is_retweet(&self) -> bool {
        if self.retweeted_tweet_id.is_some() {
            return true;
        }
        let t = self.text.trim_start();
        let b = t.as_bytes();
        b.len() >= 4 && b[..3].eq_ignore_ascii_case(b"rt ") && b[3] == b'@'
    }
}

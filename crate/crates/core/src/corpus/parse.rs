//! Single-record parsing and normalization. Field names follow the Twitter
//! API nomenclature; values tolerate the type drift seen in real archives
//! (numeric ids, stringified counts, epoch or ISO-8601 timestamps).

use super::{TweetRecord, UserSnapshot};
use crate::time;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseFailure {
    pub line: u64,
    pub reason: ParseReason,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseReason {
    #[error("malformed json: {0}")]
    MalformedJson(String),
    #[error("missing tweet_id")]
    MissingTweetId,
    #[error("missing created_at")]
    MissingCreatedAt,
    #[error("missing user_id")]
    MissingUserId,
    #[error("unparseable timestamp: {0}")]
    BadTimestamp(String),
}

/// A field that may arrive as a JSON string or number; kept as text.
fn de_opt_id<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    struct IdVisitor;
    impl<'de> Visitor<'de> for IdVisitor {
        type Value = Option<String>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("string or integer id")
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
            Ok(Some(v.to_string()))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
            Ok(Some(v.to_string()))
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
            Ok(Some(v.to_string()))
        }
        fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<Self::Value, D2::Error> {
            d.deserialize_any(IdVisitor)
        }
    }
    d.deserialize_any(IdVisitor)
}

/// Timestamp as epoch seconds (number) or text to be parsed later.
#[derive(Debug, Clone)]
enum RawTime {
    Secs(i64),
    Text(String),
}

fn de_opt_time<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RawTime>, D::Error> {
    struct TimeVisitor;
    impl<'de> Visitor<'de> for TimeVisitor {
        type Value = Option<RawTime>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("timestamp string or epoch seconds")
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
            Ok(Some(RawTime::Text(v.to_string())))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
            Ok(Some(RawTime::Secs(v as i64)))
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
            Ok(Some(RawTime::Secs(v)))
        }
        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
            Ok(Some(RawTime::Secs(v.trunc() as i64)))
        }
        fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<Self::Value, D2::Error> {
            d.deserialize_any(TimeVisitor)
        }
    }
    d.deserialize_any(TimeVisitor)
}

/// Nonnegative count as number or numeric string; anything else reads as
/// absent so the snapshot is flagged incomplete rather than rejected.
fn de_opt_count<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
    struct CountVisitor;
    impl<'de> Visitor<'de> for CountVisitor {
        type Value = Option<u64>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("nonnegative count")
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
            Ok(Some(v))
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
            Ok(u64::try_from(v).ok())
        }
        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
            if v.is_finite() && v >= 0.0 {
                Ok(Some(v.trunc() as u64))
            } else {
                Ok(None)
            }
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
            Ok(v.trim().parse::<u64>().ok())
        }
        fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }
        fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<Self::Value, D2::Error> {
            d.deserialize_any(CountVisitor)
        }
    }
    d.deserialize_any(CountVisitor)
}

/// Boolean, tolerating 0/1 numerals; absent or null reads as false.
fn de_bool<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
    struct BoolVisitor;
    impl<'de> Visitor<'de> for BoolVisitor {
        type Value = bool;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("boolean")
        }
        fn visit_bool<E: de::Error>(self, v: bool) -> Result<bool, E> {
            Ok(v)
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<bool, E> {
            Ok(v != 0)
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<bool, E> {
            Ok(v != 0)
        }
        fn visit_unit<E: de::Error>(self) -> Result<bool, E> {
            Ok(false)
        }
        fn visit_none<E: de::Error>(self) -> Result<bool, E> {
            Ok(false)
        }
        fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<bool, D2::Error> {
            d.deserialize_any(BoolVisitor)
        }
    }
    d.deserialize_any(BoolVisitor)
}

#[derive(Debug, Deserialize)]
struct RawUser {
    #[serde(default, deserialize_with = "de_opt_id")]
    id: Option<String>,
    #[serde(default)]
    screen_name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    #[serde(default, deserialize_with = "de_opt_time")]
    created_at: Option<RawTime>,
    #[serde(default, deserialize_with = "de_opt_count")]
    statuses_count: Option<u64>,
    #[serde(default, deserialize_with = "de_opt_count")]
    followers_count: Option<u64>,
    #[serde(default, deserialize_with = "de_opt_count")]
    friends_count: Option<u64>,
    #[serde(default, deserialize_with = "de_opt_count")]
    favourites_count: Option<u64>,
    #[serde(default, deserialize_with = "de_opt_count")]
    listed_count: Option<u64>,
    #[serde(default, deserialize_with = "de_bool")]
    default_profile: bool,
    #[serde(default, deserialize_with = "de_bool")]
    geo_enabled: bool,
    #[serde(default, deserialize_with = "de_bool")]
    profile_use_background_image: bool,
    #[serde(default, deserialize_with = "de_bool")]
    verified: bool,
    #[serde(default, deserialize_with = "de_bool")]
    protected: bool,
}

#[derive(Debug, Deserialize)]
struct RawTweet {
    #[serde(default, deserialize_with = "de_opt_id")]
    id: Option<String>,
    #[serde(default, deserialize_with = "de_opt_time")]
    created_at: Option<RawTime>,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    user: Option<RawUser>,
    #[serde(default)]
    hashtags: Option<Vec<String>>,
    #[serde(default)]
    mentions: Option<Vec<String>>,
    #[serde(default)]
    urls: Option<Vec<String>>,
    #[serde(default)]
    lang: Option<String>,
    #[serde(default, deserialize_with = "de_opt_id")]
    retweeted_user_id: Option<String>,
    #[serde(default, deserialize_with = "de_opt_id")]
    retweeted_tweet_id: Option<String>,
}

fn resolve_time(raw: Option<RawTime>, line: u64) -> Result<Option<i64>, ParseFailure> {
    match raw {
        None => Ok(None),
        Some(RawTime::Secs(s)) => Ok(Some(s)),
        Some(RawTime::Text(t)) => match time::parse_utc(&t) {
            Some(s) => Ok(Some(s)),
            None => Err(ParseFailure {
                line,
                reason: ParseReason::BadTimestamp(t),
            }),
        },
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Extract `sigil`-prefixed word-character runs, lowercased.
fn extract_tagged(text: &str, sigil: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(pos) = rest.find(sigil) {
        let after = &rest[pos + sigil.len_utf8()..];
        let end = after
            .char_indices()
            .find(|(_, c)| !is_word_char(*c))
            .map(|(i, _)| i)
            .unwrap_or(after.len());
        if end > 0 {
            out.push(after[..end].to_lowercase());
        }
        rest = &after[end.min(after.len())..];
    }
    out
}

/// Extract http(s) URLs as maximal non-whitespace runs.
fn extract_urls(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if let Some(start) = token.find("http://").or_else(|| token.find("https://")) {
            out.push(token[start..].to_string());
        }
    }
    out
}

fn normalize_tag(raw: &str) -> String {
    raw.trim().trim_start_matches(['#', '@']).to_lowercase()
}

/// Parse one NDJSON line into a normalized record.
///
/// `line` is the 1-based line number used in failure reports. Missing
/// booleans default to false, a missing lang defaults to "und", and when the
/// archive carries no pre-extracted entity arrays they are recovered from the
/// text. A retweet linkage with only one of its two fields present is
/// dropped whole to keep the pairing invariant.
pub fn parse_record(input: &str, line: u64) -> Result<TweetRecord, ParseFailure> {
    let raw: RawTweet = serde_json::from_str(input).map_err(|e| ParseFailure {
        line,
        reason: ParseReason::MalformedJson(e.to_string()),
    })?;

    let tweet_id = raw.id.filter(|s| !s.is_empty()).ok_or(ParseFailure {
        line,
        reason: ParseReason::MissingTweetId,
    })?;
    let created_at = resolve_time(raw.created_at, line)?.ok_or(ParseFailure {
        line,
        reason: ParseReason::MissingCreatedAt,
    })?;
    let user_raw = raw.user.ok_or(ParseFailure {
        line,
        reason: ParseReason::MissingUserId,
    })?;
    let user_id = user_raw.id.filter(|s| !s.is_empty()).ok_or(ParseFailure {
        line,
        reason: ParseReason::MissingUserId,
    })?;
    // Account ages are advisory; a malformed one degrades to absent.
    let created_at_account = resolve_time(user_raw.created_at, line).unwrap_or(None);

    let text = raw.text.unwrap_or_default();
    let hashtags = match raw.hashtags {
        Some(tags) => tags
            .iter()
            .map(|t| normalize_tag(t))
            .filter(|t| !t.is_empty())
            .collect(),
        None => extract_tagged(&text, '#'),
    };
    let mentions = match raw.mentions {
        Some(names) => names
            .iter()
            .map(|m| normalize_tag(m))
            .filter(|m| !m.is_empty())
            .collect(),
        None => extract_tagged(&text, '@'),
    };
    let urls = match raw.urls {
        Some(urls) => urls
            .into_iter()
            .map(|u| u.trim().to_string())
            .filter(|u| !u.is_empty())
            .collect(),
        None => extract_urls(&text),
    };
    let lang = match raw.lang {
        Some(l) if !l.trim().is_empty() => l.trim().to_lowercase(),
        _ => "und".to_string(),
    };
    let (retweeted_user_id, retweeted_tweet_id) = match (raw.retweeted_user_id, raw.retweeted_tweet_id)
    {
        (Some(u), Some(t)) if !u.is_empty() && !t.is_empty() => (Some(u), Some(t)),
        _ => (None, None),
    };

    Ok(TweetRecord {
        tweet_id,
        created_at,
        text,
        user: UserSnapshot {
            user_id,
            screen_name: user_raw.screen_name.unwrap_or_default().to_lowercase(),
            description: user_raw.description.unwrap_or_default(),
            created_at_account,
            statuses_count: user_raw.statuses_count,
            followers_count: user_raw.followers_count,
            friends_count: user_raw.friends_count,
            favourites_count: user_raw.favourites_count,
            listed_count: user_raw.listed_count,
            default_profile: user_raw.default_profile,
            geo_enabled: user_raw.geo_enabled,
            profile_use_background_image: user_raw.profile_use_background_image,
            verified: user_raw.verified,
            protected: user_raw.protected,
            observed_at: created_at,
        },
        hashtags,
        mentions,
        urls,
        lang,
        retweeted_user_id,
        retweeted_tweet_id,
    })
}

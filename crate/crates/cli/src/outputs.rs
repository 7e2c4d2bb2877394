//! CSV rendering for bundle tables and series. Minimal quoting: fields
//! containing a comma, quote, or newline are double-quoted.

use botscope_core::analytics::{
    BotActivityRow, DistributionSuite, FollowerDelta, Histogram, RankTable, TimelineSeries,
};
use botscope_core::botdetect::PopulationRow;
use botscope_core::stats::RankFrequency;
use botscope_core::time::format_utc;
use std::collections::HashMap;
use std::fmt::Write as _;

pub fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn rank_table_csv(table: &RankTable) -> String {
    let mut out = String::from("rank,entity,count\n");
    for (i, (entity, count)) in table.rows.iter().enumerate() {
        let _ = writeln!(out, "{},{},{count}", i + 1, csv_field(entity));
    }
    out
}

pub fn timeline_csv(series: &TimelineSeries) -> String {
    let mut out = String::from("bin_start_utc,bin_start_epoch,count\n");
    for (i, count) in series.counts.iter().enumerate() {
        let start = series.bin_start(i);
        let _ = writeln!(out, "{},{start},{count}", format_utc(start));
    }
    out
}

pub fn rank_frequency_csv(freq: &RankFrequency) -> String {
    let mut out = String::from("rank,entity,count,log10_rank,log10_count\n");
    for e in &freq.entries {
        let (lr, lc) = if e.count > 0 {
            (
                (e.rank as f64).log10().to_string(),
                (e.count as f64).log10().to_string(),
            )
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(out, "{},{},{},{lr},{lc}", e.rank, csv_field(&e.entity), e.count);
    }
    out
}

pub fn histogram_csv(hist: &Histogram) -> String {
    let mut out = String::from("value,frequency,log10_value,log10_frequency\n");
    for (value, freq) in &hist.pairs {
        let (lv, lf) = if *value > 0 && *freq > 0 {
            (
                (*value as f64).log10().to_string(),
                (*freq as f64).log10().to_string(),
            )
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(out, "{value},{freq},{lv},{lf}");
    }
    out
}

pub fn population_csv(rows: &[PopulationRow]) -> String {
    let mut out = String::from("user_id,probability,label,complete\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            csv_field(&row.user_id),
            row.probability,
            row.label.as_str(),
            u8::from(row.complete)
        );
    }
    out
}

/// Account status sidecar values keyed by user_id; never computed, only
/// read from a user-supplied file.
pub type StatusMap = HashMap<String, String>;

fn status_of<'a>(statuses: Option<&'a StatusMap>, user_id: &str) -> &'a str {
    statuses
        .and_then(|m| m.get(user_id))
        .map(String::as_str)
        .unwrap_or("")
}

pub fn follower_deltas_csv(rows: &[FollowerDelta], statuses: Option<&StatusMap>) -> String {
    let mut out = String::from(
        "user_id,followers_before,followers_after,tweets_in_scope,retweets_received_from_humans,status\n",
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&row.user_id),
            row.followers_before,
            row.followers_after,
            row.tweets_in_scope,
            row.retweets_received_from_humans,
            csv_field(status_of(statuses, &row.user_id))
        );
    }
    out
}

pub fn bot_activity_csv(rows: &[BotActivityRow], statuses: Option<&StatusMap>) -> String {
    let mut out = String::from(
        "user_id,screen_name,tweets_in_scope,statuses_count,followers_count,friends_count,favourites_count,listed_count,status\n",
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            csv_field(&row.user_id),
            csv_field(&row.screen_name),
            row.tweets_in_scope,
            row.statuses_count,
            row.followers_count,
            row.friends_count,
            row.favourites_count,
            row.listed_count,
            csv_field(status_of(statuses, &row.user_id))
        );
    }
    out
}

/// File stems for the seven distributions, letter-prefixed.
pub fn distribution_files(suite: &DistributionSuite) -> Vec<(String, String)> {
    let mut files = Vec::with_capacity(7);
    files.push((
        "dist_a_tweets_per_user.csv".to_string(),
        histogram_csv(&suite.tweets_per_user),
    ));
    let freq_parts: [(&str, &RankFrequency); 6] = [
        ("dist_b_tweet_tokens.csv", &suite.tweet_tokens),
        ("dist_c_profile_tokens.csv", &suite.profile_tokens),
        ("dist_d_languages.csv", &suite.languages),
        ("dist_e_hashtags.csv", &suite.hashtags),
        ("dist_f_mentions.csv", &suite.mentions),
        ("dist_g_urls.csv", &suite.urls),
    ];
    for (name, freq) in freq_parts {
        files.push((name.to_string(), rank_frequency_csv(freq)));
    }
    files
}

//! Dormant-account detection: active in an earlier campaign window, near
//! silent in between, active again in a later window.

use super::AnalyticsError;
use crate::corpus::UserTable;
use crate::time;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

/// Half-open interval [start, end) in epoch seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub start: i64,
    pub end: i64,
}

impl Window {
    pub fn contains(&self, ts: i64) -> bool {
        ts >= self.start && ts < self.end
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DormancyParams {
    pub window_a: Window,
    pub window_b: Window,
    pub min_a: u64,
    pub min_b: u64,
    pub max_gap: u64,
}

impl DormancyParams {
    pub fn new(window_a: Window, window_b: Window) -> Self {
        DormancyParams {
            window_a,
            window_b,
            min_a: 5,
            min_b: 5,
            max_gap: 1,
        }
    }

    fn validate(&self) -> Result<(), AnalyticsError> {
        if self.window_a.start < self.window_a.end
            && self.window_a.end <= self.window_b.start
            && self.window_b.start < self.window_b.end
        {
            Ok(())
        } else {
            Err(AnalyticsError::InvertedWindows)
        }
    }

    fn gap(&self) -> Window {
        Window {
            start: self.window_a.end,
            end: self.window_b.start,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DormancyFlag {
    pub user_id: String,
    pub active_in_a: u64,
    pub active_in_gap: u64,
    pub active_in_b: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DormancyReport {
    pub flagged: Vec<DormancyFlag>,
    /// Weaker signal: account created inside window A but first observed
    /// tweet falls in window B.
    pub creation_gap_candidates: Vec<String>,
}

/// Apply the threshold rule to per-user activity traces: flagged iff
/// activity in A >= min_a, activity in B >= min_b, and activity in the gap
/// <= max_gap. Output is ordered by user_id.
pub fn detect_dormant(
    traces: &BTreeMap<String, Vec<i64>>,
    params: &DormancyParams,
) -> Result<Vec<DormancyFlag>, AnalyticsError> {
    params.validate()?;
    let gap = params.gap();
    let mut flags = Vec::new();
    for (user_id, timestamps) in traces {
        let mut in_a = 0u64;
        let mut in_gap = 0u64;
        let mut in_b = 0u64;
        for &ts in timestamps {
            if params.window_a.contains(ts) {
                in_a += 1;
            } else if gap.contains(ts) {
                in_gap += 1;
            } else if params.window_b.contains(ts) {
                in_b += 1;
            }
        }
        if in_a >= params.min_a && in_b >= params.min_b && in_gap <= params.max_gap {
            flags.push(DormancyFlag {
                user_id: user_id.clone(),
                active_in_a: in_a,
                active_in_gap: in_gap,
                active_in_b: in_b,
            });
        }
    }
    Ok(flags)
}

/// The creation-gap heuristic over a corpus-derived user table, for when no
/// window-A activity trace exists.
pub fn creation_gap_candidates(
    table: &UserTable,
    params: &DormancyParams,
) -> Result<Vec<String>, AnalyticsError> {
    params.validate()?;
    let mut out: Vec<String> = table
        .iter()
        .filter(|(_, entry)| {
            let created_in_a = entry
                .last_snapshot
                .created_at_account
                .map(|ts| params.window_a.contains(ts))
                .unwrap_or(false);
            let first_tweet_in_b = entry
                .tweet_timestamps
                .first()
                .map(|&ts| params.window_b.contains(ts))
                .unwrap_or(false);
            created_in_a && first_tweet_in_b
        })
        .map(|(user_id, _)| user_id.clone())
        .collect();
    out.sort();
    Ok(out)
}

/// Load `user_id,timestamp` activity traces (NDJSON-free plain lines; the
/// timestamp accepts epoch seconds or ISO-8601).
pub fn load_traces(path: &Path) -> Result<BTreeMap<String, Vec<i64>>, AnalyticsError> {
    let contents = std::fs::read_to_string(path).map_err(|source| AnalyticsError::TraceIo {
        path: path.display().to_string(),
        source,
    })?;
    let mut traces: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    for (idx, raw) in contents.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((user, ts_raw)) = line.split_once(',') else {
            return Err(AnalyticsError::TraceParse {
                line: line_no,
                detail: format!("expected `user_id,timestamp`, got `{line}`"),
            });
        };
        let Some(ts) = time::parse_utc(ts_raw) else {
            return Err(AnalyticsError::TraceParse {
                line: line_no,
                detail: format!("bad timestamp `{ts_raw}`"),
            });
        };
        traces.entry(user.trim().to_string()).or_default().push(ts);
    }
    Ok(traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_user_table, parse_record};

    fn params() -> DormancyParams {
        DormancyParams::new(
            Window {
                start: 1000,
                end: 2000,
            },
            Window {
                start: 5000,
                end: 6000,
            },
        )
    }

    fn trace(user: &str, a: u64, gap: u64, b: u64) -> (String, Vec<i64>) {
        let mut ts = Vec::new();
        for i in 0..a {
            ts.push(1000 + i as i64);
        }
        for i in 0..gap {
            ts.push(3000 + i as i64);
        }
        for i in 0..b {
            ts.push(5000 + i as i64);
        }
        (user.to_string(), ts)
    }

    #[test]
    fn active_both_windows_silent_gap_flagged() {
        let traces: BTreeMap<_, _> = [trace("u1", 10, 0, 8)].into_iter().collect();
        let flags = detect_dormant(&traces, &params()).unwrap();
        assert_eq!(flags.len(), 1);
        assert_eq!(flags[0].user_id, "u1");
        assert_eq!(flags[0].active_in_a, 10);
        assert_eq!(flags[0].active_in_b, 8);
    }

    #[test]
    fn busy_gap_not_flagged() {
        let traces: BTreeMap<_, _> = [trace("u1", 10, 50, 8)].into_iter().collect();
        assert!(detect_dormant(&traces, &params()).unwrap().is_empty());
    }

    #[test]
    fn thresholds_and_boundaries_respected() {
        let traces: BTreeMap<_, _> = [
            trace("below_a", 4, 0, 8),
            trace("below_b", 9, 0, 4),
            trace("at_gap_limit", 9, 1, 9),
            trace("over_gap", 9, 2, 9),
        ]
        .into_iter()
        .collect();
        let flags = detect_dormant(&traces, &params()).unwrap();
        let ids: Vec<&str> = flags.iter().map(|f| f.user_id.as_str()).collect();
        assert_eq!(ids, vec!["at_gap_limit"]);
    }

    #[test]
    fn planted_fixture_exact_recovery() {
        let mut traces: BTreeMap<String, Vec<i64>> = BTreeMap::new();
        let mut rng = crate::rng::SeededRng::new(70);
        let mut planted = Vec::new();
        for i in 0..100 {
            let user = format!("acct{i:03}");
            if i % 14 == 2 && planted.len() < 7 {
                planted.push(user.clone());
                traces.insert(user, trace("", 6 + rng.below(5), 0, 6 + rng.below(5)).1);
            } else {
                // Non-dormant shapes: continuous activity or single-window.
                let shape = rng.below(3);
                let t = match shape {
                    0 => trace("", 8, 10, 8).1,
                    1 => trace("", 9, 0, 0).1,
                    _ => trace("", 0, 0, 9).1,
                };
                traces.insert(user, t);
            }
        }
        let flags = detect_dormant(&traces, &params()).unwrap();
        let got: Vec<&str> = flags.iter().map(|f| f.user_id.as_str()).collect();
        assert_eq!(got, planted.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    }

    #[test]
    fn inverted_windows_rejected() {
        let bad = DormancyParams::new(
            Window {
                start: 5000,
                end: 6000,
            },
            Window {
                start: 1000,
                end: 2000,
            },
        );
        assert!(matches!(
            detect_dormant(&BTreeMap::new(), &bad),
            Err(AnalyticsError::InvertedWindows)
        ));
    }

    #[test]
    fn creation_gap_heuristic_from_table() {
        let mk = |tweet_id: &str, user: &str, ts: i64, created: i64| {
            parse_record(
                &format!(
                    r#"{{"id":"{tweet_id}","created_at":{ts},"text":"x","user":{{"id":"{user}","created_at":{created}}}}}"#
                ),
                1,
            )
            .unwrap()
        };
        // candidate: created in A, first tweet in B
        // not: created before A; not: first tweet in gap
        let records = vec![
            mk("t1", "cand", 5500, 1500),
            mk("t2", "old", 5500, 10),
            mk("t3", "early", 3000, 1500),
            mk("t4", "early", 5600, 1500),
        ];
        let table = build_user_table(&records);
        let got = creation_gap_candidates(&table, &params()).unwrap();
        assert_eq!(got, vec!["cand".to_string()]);
    }

    #[test]
    fn traces_load_and_reject_garbage() {
        let dir = std::env::temp_dir().join("botscope-dormancy-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{}-traces.csv", std::process::id()));
        std::fs::write(&path, "u1,1000\nu1,2017-05-05T12:00:00Z\nu2,1500\n").unwrap();
        let traces = load_traces(&path).unwrap();
        assert_eq!(traces["u1"], vec![1000, 1493985600]);
        assert_eq!(traces["u2"], vec![1500]);

        std::fs::write(&path, "u1;1000\n").unwrap();
        assert!(matches!(
            load_traces(&path),
            Err(AnalyticsError::TraceParse { line: 1, .. })
        ));
    }
}

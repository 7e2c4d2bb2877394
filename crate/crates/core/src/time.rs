//! UTC timestamp parsing and formatting. All timestamps in the crate are
//! plain epoch seconds; formatting is only for human-facing output.

use chrono::{DateTime, NaiveDateTime, TimeZone, Utc};

/// Parse a timestamp string into epoch seconds.
///
/// Accepts RFC 3339 / ISO-8601 (`2017-05-05T12:00:00Z`, offset forms),
/// the space-separated variant (`2017-05-05 12:00:00`, read as UTC),
/// the classic Twitter API form (`Fri May 05 12:00:00 +0000 2017`),
/// and raw epoch seconds as a decimal string.
pub fn parse_utc(raw: &str) -> Option<i64> {
    let s = raw.trim();
    if s.is_empty() {
        return None;
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.timestamp());
    }
    if let Ok(naive) = NaiveDateTime::parse_from_str(s, "%Y-%m-%d %H:%M:%S") {
        return Some(naive.and_utc().timestamp());
    }
    if let Ok(dt) = DateTime::parse_from_str(s, "%a %b %d %H:%M:%S %z %Y") {
        return Some(dt.timestamp());
    }
    if let Ok(secs) = s.parse::<i64>() {
        return Some(secs);
    }
    // Fractional epoch seconds; truncate to whole seconds.
    if let Ok(secs) = s.parse::<f64>() {
        if secs.is_finite() && secs.abs() < 4e17 {
            return Some(secs.trunc() as i64);
        }
    }
    None
}

/// Format epoch seconds as `YYYY-MM-DDTHH:MM:SSZ`.
pub fn format_utc(secs: i64) -> String {
    match Utc.timestamp_opt(secs, 0).single() {
        Some(dt) => dt.format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        None => format!("epoch:{secs}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rfc3339() {
        assert_eq!(parse_utc("1970-01-01T00:00:00Z"), Some(0));
        assert_eq!(parse_utc("2017-05-05T12:00:00Z"), Some(1493985600));
        assert_eq!(parse_utc("2017-05-05T12:00:00+02:00"), Some(1493978400));
    }

    #[test]
    fn parses_space_separated_as_utc() {
        assert_eq!(parse_utc("2017-05-05 12:00:00"), Some(1493985600));
    }

    #[test]
    fn parses_twitter_classic() {
        assert_eq!(
            parse_utc("Fri May 05 12:00:00 +0000 2017"),
            Some(1493985600)
        );
    }

    #[test]
    fn parses_epoch_seconds() {
        assert_eq!(parse_utc("1493985600"), Some(1493985600));
        assert_eq!(parse_utc("1493985600.75"), Some(1493985600));
        assert_eq!(parse_utc("-10"), Some(-10));
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_utc("not-a-date"), None);
        assert_eq!(parse_utc(""), None);
        assert_eq!(parse_utc("2017-13-45T99:00:00Z"), None);
    }

    #[test]
    fn round_trips_through_format() {
        let t = 1494028800;
        assert_eq!(parse_utc(&format_utc(t)), Some(t));
        assert_eq!(format_utc(0), "1970-01-01T00:00:00Z");
    }
}

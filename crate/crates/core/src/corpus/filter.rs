//! Campaign sub-corpus carving by term matching.

use super::TweetRecord;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("campaign filter needs at least one nonempty term")]
    NoTerms,
}

/// Which record fields a campaign term may match against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchFields {
    pub hashtags: bool,
    pub text: bool,
}

impl Default for MatchFields {
    fn default() -> Self {
        MatchFields {
            hashtags: true,
            text: true,
        }
    }
}

/// A set of lowercase campaign terms. Hashtag matching is exact on the
/// normalized tag; text matching is case-insensitive substring.
#[derive(Debug, Clone)]
pub struct CampaignFilter {
    terms: Vec<String>,
    pub fields: MatchFields,
}

impl CampaignFilter {
    /// Normalizes terms (trim, strip a leading '#', lowercase) and
    /// deduplicates them. Errors when nothing usable remains.
    pub fn new<S: AsRef<str>>(terms: &[S], fields: MatchFields) -> Result<Self, FilterError> {
        let mut normalized: Vec<String> = terms
            .iter()
            .map(|t| t.as_ref().trim().trim_start_matches('#').to_lowercase())
            .filter(|t| !t.is_empty())
            .collect();
        normalized.sort();
        normalized.dedup();
        if normalized.is_empty() {
            return Err(FilterError::NoTerms);
        }
        Ok(CampaignFilter {
            terms: normalized,
            fields,
        })
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn matches(&self, record: &TweetRecord) -> bool {
        if self.fields.hashtags {
            for tag in &record.hashtags {
                if self.terms.binary_search(tag).is_ok() {
                    return true;
                }
            }
        }
        if self.fields.text {
            let lowered = record.text.to_lowercase();
            if self.terms.iter().any(|t| lowered.contains(t)) {
                return true;
            }
        }
        false
    }
}

/// Retain exactly the tweets matching any term in the selected fields.
pub fn filter_campaign(records: &[TweetRecord], filter: &CampaignFilter) -> Vec<TweetRecord> {
    records
        .iter()
        .filter(|r| filter.matches(r))
        .cloned()
        .collect()
}

//! Per-bin tweet volume series, GMT-aligned: bin = floor(created_at / width).
//! One series per partition class plus "all"; all series share one dense bin
//! range so they sum bin-wise.

use super::Partition;
use crate::botdetect::UserClass;
use crate::corpus::TweetRecord;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

pub const CLASS_ALL: &str = "all";
pub const CLASS_UNLABELED: &str = "unlabeled";
const RETWEET_SUFFIX: &str = "_retweets";

#[derive(Debug, Clone)]
pub struct TimelineOptions {
    pub bin_seconds: u32,
    /// Emit separate `<class>_retweets` series for retweet traffic.
    pub split_retweets: bool,
    pub partition: Option<Arc<Partition>>,
}

impl Default for TimelineOptions {
    fn default() -> Self {
        TimelineOptions {
            bin_seconds: 60,
            split_retweets: false,
            partition: None,
        }
    }
}

/// Dense counts from the first to the last nonzero bin of the corpus
/// (zeros included), for one labeled slice of the traffic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimelineSeries {
    pub label: String,
    pub bin_seconds: u32,
    /// Epoch seconds of the first bin's start.
    pub start: i64,
    pub counts: Vec<u64>,
}

impl TimelineSeries {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_start(&self, index: usize) -> i64 {
        self.start + index as i64 * i64::from(self.bin_seconds)
    }
}

/// Sparse accumulator; merges commutatively across shards.
#[derive(Debug, Clone)]
pub struct TimelineAcc {
    opts: TimelineOptions,
    per_class: HashMap<String, HashMap<i64, u64>>,
}

impl TimelineAcc {
    pub fn new(opts: TimelineOptions) -> Self {
        assert!(opts.bin_seconds >= 1, "bin width must be at least 1 s");
        TimelineAcc {
            opts,
            per_class: HashMap::new(),
        }
    }

    fn class_label(&self, record: &TweetRecord) -> Option<String> {
        let partition = self.opts.partition.as_ref()?;
        let base = match partition.class_of(&record.user.user_id) {
            Some(UserClass::Bot) => "bots",
            Some(UserClass::Human) => "humans",
            None => CLASS_UNLABELED,
        };
        if self.opts.split_retweets && record.is_retweet() {
            Some(format!("{base}{RETWEET_SUFFIX}"))
        } else {
            Some(base.to_string())
        }
    }

    pub fn absorb(&mut self, record: &TweetRecord) {
        let bin = record.created_at.div_euclid(i64::from(self.opts.bin_seconds));
        *self
            .per_class
            .entry(CLASS_ALL.to_string())
            .or_default()
            .entry(bin)
            .or_insert(0) += 1;
        if let Some(label) = self.class_label(record) {
            *self
                .per_class
                .entry(label)
                .or_default()
                .entry(bin)
                .or_insert(0) += 1;
        }
    }

    pub fn merge(&mut self, other: TimelineAcc) {
        for (label, bins) in other.per_class {
            let mine = self.per_class.entry(label).or_default();
            for (bin, count) in bins {
                *mine.entry(bin).or_insert(0) += count;
            }
        }
    }

    /// Densify into one series per label over the corpus-wide bin range,
    /// "all" first, remaining labels alphabetical.
    pub fn finish(self) -> Vec<TimelineSeries> {
        let Some(all) = self.per_class.get(CLASS_ALL) else {
            return Vec::new();
        };
        let lo = *all.keys().min().expect("nonempty all series");
        let hi = *all.keys().max().expect("nonempty all series");
        let width = i64::from(self.opts.bin_seconds);
        let mut labels: Vec<&String> = self.per_class.keys().collect();
        labels.sort_by(|a, b| {
            (a.as_str() != CLASS_ALL)
                .cmp(&(b.as_str() != CLASS_ALL))
                .then_with(|| a.cmp(b))
        });
        labels
            .into_iter()
            .map(|label| {
                let sparse = &self.per_class[label];
                let mut counts = vec![0u64; (hi - lo + 1) as usize];
                for (bin, count) in sparse {
                    counts[(bin - lo) as usize] = *count;
                }
                TimelineSeries {
                    label: label.clone(),
                    bin_seconds: self.opts.bin_seconds,
                    start: lo * width,
                    counts,
                }
            })
            .collect()
    }
}

/// Bin a corpus slice; see [`TimelineAcc`].
pub fn timeline(records: &[TweetRecord], opts: TimelineOptions) -> Vec<TimelineSeries> {
    let mut acc = TimelineAcc::new(opts);
    for record in records {
        acc.absorb(record);
    }
    acc.finish()
}

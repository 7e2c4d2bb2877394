//! One-pass corpus aggregation for the analyze pipeline: a single
//! [`RecordSink`] that feeds the timeline, entity counters, user table, and
//! retweet-event log, plus a wrapper that additionally routes
//! campaign-matching tweets into a second accumulator.

use super::deltas::{resolve_retweet_target, RetweetEvent};
use super::distributions::{suite_from_parts, DistributionSuite};
use super::ranks::EntityCounter;
use super::stoplist::Stoplist;
use super::timeline::{TimelineAcc, TimelineOptions, TimelineSeries};
use crate::corpus::{CampaignFilter, RecordSink, TweetRecord, UserTable, UserTableBuilder};

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub timeline: TimelineOptions,
    pub stoplist: Stoplist,
}

/// Everything `analyze` needs from one scan of the corpus.
pub struct AnalyzeAccumulator {
    timeline: TimelineAcc,
    pub entities: EntityCounter,
    users: UserTableBuilder,
    pub retweet_events: Vec<RetweetEvent>,
    pub tweets: u64,
}

impl AnalyzeAccumulator {
    pub fn new(opts: AnalyzeOptions) -> Self {
        AnalyzeAccumulator {
            timeline: TimelineAcc::new(opts.timeline.clone()),
            entities: EntityCounter::new(opts.stoplist),
            users: UserTableBuilder::new(),
            retweet_events: Vec::new(),
            tweets: 0,
        }
    }

    pub fn merge(&mut self, other: AnalyzeAccumulator) {
        self.timeline.merge(other.timeline);
        self.entities.merge(other.entities);
        self.users.merge(other.users);
        self.retweet_events.extend(other.retweet_events);
        self.tweets += other.tweets;
    }

    pub fn finish(self) -> AnalyzeProducts {
        let user_table = self.users.finish();
        let tweets_per_user: Vec<u64> = user_table
            .iter_sorted()
            .into_iter()
            .map(|(_, e)| e.tweet_count_in_corpus)
            .collect();
        AnalyzeProducts {
            timelines: self.timeline.finish(),
            distributions: suite_from_parts(&self.entities, tweets_per_user),
            entities: self.entities,
            user_table,
            retweet_events: self.retweet_events,
            tweets: self.tweets,
        }
    }
}

impl RecordSink for AnalyzeAccumulator {
    fn absorb(&mut self, record: TweetRecord) {
        self.tweets += 1;
        self.timeline.absorb(&record);
        self.entities.absorb(&record);
        self.users.absorb(&record);
        if let Some(event) = resolve_retweet_target(&record) {
            self.retweet_events.push(event);
        }
    }

}

pub struct AnalyzeProducts {
    pub timelines: Vec<TimelineSeries>,
    pub entities: EntityCounter,
    pub distributions: DistributionSuite,
    pub user_table: UserTable,
    pub retweet_events: Vec<RetweetEvent>,
    pub tweets: u64,
}

/// Routes every record to the full-corpus accumulator and, when it matches
/// the campaign filter, to the campaign-scoped one too.
pub struct CampaignSplitSink {
    pub all: AnalyzeAccumulator,
    pub campaign: Option<(CampaignFilter, AnalyzeAccumulator)>,
}

impl CampaignSplitSink {
    pub fn new(opts: AnalyzeOptions, filter: Option<CampaignFilter>) -> Self {
        CampaignSplitSink {
            campaign: filter.map(|f| (f, AnalyzeAccumulator::new(opts.clone()))),
            all: AnalyzeAccumulator::new(opts),
        }
    }
}

impl RecordSink for CampaignSplitSink {
    fn absorb(&mut self, record: TweetRecord) {
        if let Some((filter, acc)) = &mut self.campaign {
            if filter.matches(&record) {
                acc.absorb(record.clone());
            }
        }
        self.all.absorb(record);
    }

}

//! Seeded synthetic corpus generation for tests, benchmarks, and the
//! `gen-fixture` CLI command.
//!
//! Bot and human account regimes are lognormal in the count features
//! (parameterized by mean and sd) and Bernoulli in the binaries. The
//! generator is the ground-truth oracle: it emits the corpus NDJSON, a
//! labels sidecar, a training CSV in the canonical column order, and an
//! optional activity-trace file with planted dormant accounts. Byte output
//! is a pure function of the [`FixtureSpec`], seed included.

use crate::analytics::Window;
use crate::botdetect::TRAINING_HEADER;
use crate::rng::SeededRng;
use crate::time::format_utc;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Lognormal count regime matched to a target mean and sd.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountRegime {
    pub mean: f64,
    pub sd: f64,
}

impl CountRegime {
    fn sample(&self, rng: &mut SeededRng) -> u64 {
        let ratio = self.sd / self.mean;
        let sigma2 = (1.0 + ratio * ratio).ln();
        let mu = self.mean.ln() - sigma2 / 2.0;
        let v = (mu + sigma2.sqrt() * rng.normal()).exp();
        v.round().max(0.0) as u64
    }
}

/// Per-class feature regimes: five count regimes (statuses, followers,
/// friends, favourites, listed), five binary probabilities, and the
/// in-corpus activity regime (tweets posted per user).
#[derive(Debug, Clone, Serialize)]
pub struct ClassRegimes {
    pub counts: [CountRegime; 5],
    pub binaries: [f64; 5],
    pub activity: CountRegime,
}

impl ClassRegimes {
    /// Default bot-account shape: modest lifetime counts, near-absent
    /// curation signals (favourites and list appearances are the strongest
    /// separators), default profiles, geo disabled.
    pub fn bots_default() -> Self {
        ClassRegimes {
            counts: [
                CountRegime {
                    mean: 1_500.0,
                    sd: 8_000.0,
                },
                CountRegime {
                    mean: 1_382.0,
                    sd: 22_282.0,
                },
                CountRegime {
                    mean: 1_058.0,
                    sd: 12_190.0,
                },
                CountRegime {
                    mean: 228.0,
                    sd: 924.0,
                },
                CountRegime {
                    mean: 7.42,
                    sd: 90.3,
                },
            ],
            binaries: [0.82, 0.03, 0.45, 0.001, 0.01],
            activity: CountRegime {
                mean: 2.86,
                sd: 10.3,
            },
        }
    }

    /// Default human-account shape: heavier favourites/listed mass, custom
    /// profiles, geo often enabled.
    pub fn humans_default() -> Self {
        ClassRegimes {
            counts: [
                CountRegime {
                    mean: 8_000.0,
                    sd: 20_000.0,
                },
                CountRegime {
                    mean: 2_510.0,
                    sd: 28_542.0,
                },
                CountRegime {
                    mean: 1_403.0,
                    sd: 3_656.0,
                },
                CountRegime {
                    mean: 13_774.0,
                    sd: 27_001.0,
                },
                CountRegime {
                    mean: 77.64,
                    sd: 560.2,
                },
            ],
            binaries: [0.12, 0.55, 0.92, 0.02, 0.04],
            activity: CountRegime {
                mean: 3.81,
                sd: 9.68,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureSpec {
    pub users: usize,
    pub bot_fraction: f64,
    pub seed: u64,
    /// Corpus time range [start, end) in epoch seconds.
    pub start: i64,
    pub end: i64,
    pub bots: ClassRegimes,
    pub humans: ClassRegimes,
    /// Fraction of tweets carrying the campaign hashtag.
    pub campaign_fraction: f64,
    pub campaign_tag: String,
    /// Probability a human tweet retweets a random bot.
    pub human_retweet_bot_rate: f64,
    /// Number of activity traces to synthesize (0 = no trace file).
    pub traces: usize,
    /// How many of the traces are planted dormant accounts.
    pub dormant: usize,
    /// Trace windows for the dormancy plants.
    pub window_a: Window,
    pub window_b: Window,
}

impl Default for FixtureSpec {
    fn default() -> Self {
        // Default window: ten days up to a fixed election-day style cutoff.
        let end = 1_494_201_600; // 2017-05-08T00:00:00Z
        let start = end - 10 * 86_400;
        FixtureSpec {
            users: 1_000,
            bot_fraction: 0.18,
            seed: 1,
            start,
            end,
            bots: ClassRegimes::bots_default(),
            humans: ClassRegimes::humans_default(),
            campaign_fraction: 0.15,
            campaign_tag: "campaignx".to_string(),
            human_retweet_bot_rate: 0.05,
            traces: 0,
            dormant: 0,
            window_a: Window {
                start: end - 200 * 86_400,
                end: end - 180 * 86_400,
            },
            window_b: Window {
                start,
                end,
            },
        }
    }
}

/// Ground truth emitted alongside the fixture.
#[derive(Debug, Clone, Serialize)]
pub struct GroundTruth {
    pub bots: Vec<String>,
    pub humans: Vec<String>,
    pub dormant: Vec<String>,
    pub tweets: u64,
}

pub struct FixtureFiles {
    pub corpus: PathBuf,
    pub labels: PathBuf,
    pub training: PathBuf,
    pub traces: Option<PathBuf>,
    pub truth: GroundTruth,
}

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bot fraction must be within [0, 1], got {0}")]
    BadFraction(f64),
    #[error("time range is empty")]
    EmptyRange,
    #[error("dormant plants ({dormant}) exceed trace count ({traces})")]
    TooManyDormant { dormant: usize, traces: usize },
}

struct Account {
    user_id: String,
    screen_name: String,
    description: String,
    created_at: i64,
    counts: [u64; 5],
    binaries: [bool; 5],
    is_bot: bool,
    tweets: u64,
    follower_growth_per_tweet: u64,
}

const BOT_PROFILE_WORDS: &[&str] = &[
    "maga", "patriot", "conservative", "truth", "fighter", "america", "god", "winning",
];
const HUMAN_PROFILE_WORDS: &[&str] = &[
    "politique", "journaliste", "citoyen", "france", "maman", "prof", "musique", "vélo",
];
const TWEET_WORDS: &[&str] = &[
    "macron", "lepen", "election", "debat", "vote", "campaign", "emails", "media", "paris",
    "fraude", "scandale", "documents",
];
const LANGS: &[(&str, f64)] = &[("fr", 0.45), ("en", 0.40), ("de", 0.05), ("es", 0.05)];

fn sample_account(spec: &FixtureSpec, rng: &mut SeededRng, index: usize, is_bot: bool) -> Account {
    let regimes = if is_bot { &spec.bots } else { &spec.humans };
    let mut counts = [0u64; 5];
    for (slot, regime) in counts.iter_mut().zip(&regimes.counts) {
        *slot = regime.sample(rng);
    }
    let mut binaries = [false; 5];
    for (slot, p) in binaries.iter_mut().zip(&regimes.binaries) {
        *slot = rng.chance(*p);
    }
    let tweets = regimes.activity.sample(rng).max(1);
    let words = if is_bot {
        BOT_PROFILE_WORDS
    } else {
        HUMAN_PROFILE_WORDS
    };
    let w1 = words[rng.below(words.len() as u64) as usize];
    let w2 = words[rng.below(words.len() as u64) as usize];
    let class_tag = if is_bot { "b" } else { "h" };
    // A slice of bots accrues followers fast during the window.
    let follower_growth_per_tweet = if is_bot && rng.chance(0.1) {
        10 + rng.below(500)
    } else {
        0
    };
    Account {
        user_id: format!("{class_tag}{index:07}"),
        screen_name: format!("{w1}_{class_tag}{index:05}"),
        description: format!("{w1} {w2}"),
        created_at: spec.start - 86_400 * (30 + rng.below(1000) as i64),
        counts,
        binaries,
        is_bot,
        tweets,
        follower_growth_per_tweet,
    }
}

fn pick_lang(rng: &mut SeededRng) -> &'static str {
    let roll = rng.next_f64();
    let mut acc = 0.0;
    for (lang, p) in LANGS {
        acc += p;
        if roll < acc {
            return lang;
        }
    }
    "und"
}

/// Generate the fixture into `out_dir`. Returns the paths written plus the
/// ground truth (also written as labels.csv).
pub fn generate(spec: &FixtureSpec, out_dir: &Path) -> Result<FixtureFiles, SynthError> {
    if !(0.0..=1.0).contains(&spec.bot_fraction) {
        return Err(SynthError::BadFraction(spec.bot_fraction));
    }
    if spec.start >= spec.end {
        return Err(SynthError::EmptyRange);
    }
    if spec.dormant > spec.traces {
        return Err(SynthError::TooManyDormant {
            dormant: spec.dormant,
            traces: spec.traces,
        });
    }
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source: std::io::Error| SynthError::Io {
            path: path.clone(),
            source,
        }
    };
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let mut rng = SeededRng::new(spec.seed).fork("fixture");
    // Exactly round(users * bot_fraction) bots, deterministically placed.
    let n_bots = (spec.users as f64 * spec.bot_fraction).round() as usize;
    let mut is_bot_flags = vec![false; spec.users];
    for flag in is_bot_flags.iter_mut().take(n_bots) {
        *flag = true;
    }
    rng.shuffle(&mut is_bot_flags);

    let accounts: Vec<Account> = is_bot_flags
        .iter()
        .enumerate()
        .map(|(i, &is_bot)| sample_account(spec, &mut rng, i, is_bot))
        .collect();
    let bot_ids: Vec<String> = accounts
        .iter()
        .filter(|a| a.is_bot)
        .map(|a| a.user_id.clone())
        .collect();

    // Corpus: per-account tweet streams, then shuffled into arrival order.
    struct PlannedTweet {
        account_idx: usize,
        seq: u64,
        ts: i64,
        campaign: bool,
        retweet_of: Option<usize>,
    }
    let mut planned: Vec<PlannedTweet> = Vec::new();
    let span = spec.end - spec.start;
    for (idx, account) in accounts.iter().enumerate() {
        for seq in 0..account.tweets {
            let ts = spec.start + rng.below(span as u64) as i64;
            let campaign = rng.chance(spec.campaign_fraction);
            let retweet_of = if !account.is_bot
                && !bot_ids.is_empty()
                && rng.chance(spec.human_retweet_bot_rate)
            {
                Some(rng.below(bot_ids.len() as u64) as usize)
            } else {
                None
            };
            planned.push(PlannedTweet {
                account_idx: idx,
                seq,
                ts,
                campaign,
                retweet_of,
            });
        }
    }
    rng.shuffle(&mut planned);

    let corpus_path = out_dir.join("corpus.ndjson");
    let file = fs::File::create(&corpus_path).map_err(io_err(&corpus_path))?;
    let mut out = BufWriter::with_capacity(1 << 20, file);
    let mut tweet_counter = 0u64;
    let mut line = String::with_capacity(1024);
    for tweet in &planned {
        let account = &accounts[tweet.account_idx];
        tweet_counter += 1;
        let tweet_id = format!("t{tweet_counter:010}");
        let w1 = TWEET_WORDS[rng.below(TWEET_WORDS.len() as u64) as usize];
        let w2 = TWEET_WORDS[rng.below(TWEET_WORDS.len() as u64) as usize];
        let lang = pick_lang(&mut rng);
        let tag = if tweet.campaign {
            format!(" #{}", spec.campaign_tag)
        } else {
            String::new()
        };
        let (text, retweet_fields) = match tweet.retweet_of {
            Some(bot_idx) => {
                let bot = &accounts[bot_idx];
                (
                    format!("RT @{}: {w1} {w2}{tag}", bot.screen_name),
                    format!(
                        r#","retweeted_user_id":"{}","retweeted_tweet_id":"rt{tweet_counter:010}""#,
                        bot.user_id
                    ),
                )
            }
            None => (format!("{w1} {w2}{tag} #election"), String::new()),
        };
        // Followers move over the window for growth accounts.
        let followers = account.counts[1] + account.follower_growth_per_tweet * tweet.seq;
        line.clear();
        write!(
            line,
            concat!(
                r#"{{"id":"{id}","created_at":"{ts}","text":"{text}","lang":"{lang}","#,
                r#""user":{{"id":"{uid}","screen_name":"{sn}","description":"{desc}","created_at":"{acct_ts}","#,
                r#""statuses_count":{c0},"followers_count":{c1},"friends_count":{c2},"favourites_count":{c3},"listed_count":{c4},"#,
                r#""default_profile":{b0},"geo_enabled":{b1},"profile_use_background_image":{b2},"verified":{b3},"protected":{b4}}}{rt}}}"#
            ),
            id = tweet_id,
            ts = format_utc(tweet.ts),
            text = text,
            lang = lang,
            uid = account.user_id,
            sn = account.screen_name,
            desc = account.description,
            acct_ts = format_utc(account.created_at),
            c0 = account.counts[0] + tweet.seq,
            c1 = followers,
            c2 = account.counts[2],
            c3 = account.counts[3],
            c4 = account.counts[4],
            b0 = account.binaries[0],
            b1 = account.binaries[1],
            b2 = account.binaries[2],
            b3 = account.binaries[3],
            b4 = account.binaries[4],
            rt = retweet_fields,
        )
        .expect("write to string");
        line.push('\n');
        out.write_all(line.as_bytes()).map_err(io_err(&corpus_path))?;
    }
    out.flush().map_err(io_err(&corpus_path))?;

    // Labels sidecar: user_id,label (bot=1).
    let labels_path = out_dir.join("labels.csv");
    let mut labels = String::from("user_id,label\n");
    for account in &accounts {
        let _ = writeln!(
            labels,
            "{},{}",
            account.user_id,
            u8::from(account.is_bot)
        );
    }
    fs::write(&labels_path, labels).map_err(io_err(&labels_path))?;

    // Training CSV drawn fresh from the same regimes (disjoint draws from
    // the corpus accounts, same distributions).
    let training_path = out_dir.join("training.csv");
    let mut training = String::from(TRAINING_HEADER);
    training.push('\n');
    let train_rows = spec.users.max(500);
    for i in 0..train_rows {
        let is_bot = i % 2 == 0;
        let account = sample_account(spec, &mut rng, spec.users + i, is_bot);
        let _ = write!(training, "{}", u8::from(is_bot));
        for c in account.counts {
            let _ = write!(training, ",{c}");
        }
        for b in account.binaries {
            let _ = write!(training, ",{}", u8::from(b));
        }
        training.push('\n');
    }
    fs::write(&training_path, training).map_err(io_err(&training_path))?;

    // Activity traces with planted dormant accounts.
    let mut dormant_ids = Vec::new();
    let traces_path = if spec.traces > 0 {
        let path = out_dir.join("traces.csv");
        let mut body = String::new();
        for i in 0..spec.traces {
            let user = format!("trace{i:05}");
            let dormant = i < spec.dormant;
            if dormant {
                dormant_ids.push(user.clone());
            }
            let a_span = (spec.window_a.end - spec.window_a.start).max(1) as u64;
            let b_span = (spec.window_b.end - spec.window_b.start).max(1) as u64;
            let gap_lo = spec.window_a.end;
            let gap_span = (spec.window_b.start - spec.window_a.end).max(1) as u64;
            if dormant {
                // Quiet gap, busy in both windows.
                for _ in 0..(5 + rng.below(10)) {
                    let _ = writeln!(
                        body,
                        "{user},{}",
                        spec.window_a.start + rng.below(a_span) as i64
                    );
                }
                for _ in 0..(5 + rng.below(10)) {
                    let _ = writeln!(
                        body,
                        "{user},{}",
                        spec.window_b.start + rng.below(b_span) as i64
                    );
                }
            } else {
                // Active in at most one window, or noisy through the gap.
                match rng.below(3) {
                    0 => {
                        for _ in 0..(6 + rng.below(6)) {
                            let _ = writeln!(
                                body,
                                "{user},{}",
                                spec.window_a.start + rng.below(a_span) as i64
                            );
                        }
                    }
                    1 => {
                        for _ in 0..(6 + rng.below(6)) {
                            let _ = writeln!(
                                body,
                                "{user},{}",
                                spec.window_b.start + rng.below(b_span) as i64
                            );
                        }
                    }
                    _ => {
                        for _ in 0..(6 + rng.below(6)) {
                            let _ =
                                writeln!(body, "{user},{}", spec.window_a.start
                                    + rng.below(a_span) as i64);
                        }
                        for _ in 0..(2 + rng.below(8)) {
                            let _ = writeln!(body, "{user},{}", gap_lo + rng.below(gap_span) as i64);
                        }
                        for _ in 0..(6 + rng.below(6)) {
                            let _ = writeln!(body, "{user},{}", spec.window_b.start
                                + rng.below(b_span) as i64);
                        }
                    }
                }
            }
        }
        fs::write(&path, body).map_err(io_err(&path))?;
        Some(path)
    } else {
        None
    };

    Ok(FixtureFiles {
        corpus: corpus_path,
        labels: labels_path,
        training: training_path,
        traces: traces_path,
        truth: GroundTruth {
            bots: bot_ids,
            humans: accounts
                .iter()
                .filter(|a| !a.is_bot)
                .map(|a| a.user_id.clone())
                .collect(),
            dormant: dormant_ids,
            tweets: tweet_counter,
        },
    })
}

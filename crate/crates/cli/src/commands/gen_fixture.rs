//! `botscope gen-fixture`: seeded synthetic corpus plus ground-truth
//! sidecars, wrapped in a validated bundle.

use crate::args::GenFixtureArgs;
use crate::error::CliError;
use crate::manifest::{hex_digest, BundleWriter, Counts, RunManifest, Timing};
use botscope_core::synth::{generate, FixtureSpec};
use botscope_core::time::parse_utc;
use serde::Serialize;
use std::time::Instant;

#[derive(Serialize)]
struct TruthSummary<'a> {
    users: usize,
    bots: usize,
    humans: usize,
    tweets: u64,
    dormant: &'a [String],
}

pub fn run(args: GenFixtureArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let started_utc = super::train::now_utc();
    let mut spec = FixtureSpec {
        users: args.users,
        bot_fraction: args.bot_frac,
        seed: args.seed,
        campaign_fraction: args.campaign_fraction,
        campaign_tag: args.campaign_tag.clone(),
        human_retweet_bot_rate: args.human_retweet_rate,
        traces: args.traces,
        dormant: args.dormant,
        ..Default::default()
    };
    if let Some(raw) = &args.start {
        spec.start = parse_utc(raw)
            .ok_or_else(|| CliError::usage(format!("--start: bad timestamp `{raw}`")))?;
    }
    if let Some(raw) = &args.end {
        spec.end = parse_utc(raw)
            .ok_or_else(|| CliError::usage(format!("--end: bad timestamp `{raw}`")))?;
    }
    if let Some(raw) = &args.window_a {
        spec.window_a = super::parse_window(raw, "window-a")?;
    }
    if let Some(raw) = &args.window_b {
        spec.window_b = super::parse_window(raw, "window-b")?;
    }
    if spec.traces > 0 && spec.window_a.end > spec.window_b.start {
        return Err(CliError::usage(
            "--window-a must end before --window-b starts",
        ));
    }

    let files = generate(&spec, &args.out)?;

    let mut bundle = BundleWriter::create(&args.out)?;
    bundle.record_existing("corpus.ndjson")?;
    bundle.record_existing("labels.csv")?;
    bundle.record_existing("training.csv")?;
    if files.traces.is_some() {
        bundle.record_existing("traces.csv")?;
    }
    bundle.write_json(
        "truth.json",
        &TruthSummary {
            users: spec.users,
            bots: files.truth.bots.len(),
            humans: files.truth.humans.len(),
            tweets: files.truth.tweets,
            dormant: &files.truth.dormant,
        },
    )?;

    let config_hash = hex_digest(serde_json::to_string(&spec)?.as_bytes());
    let mut manifest = RunManifest::new("gen-fixture", config_hash, spec.seed);
    manifest.counts = Counts {
        tweets: files.truth.tweets,
        users: spec.users as u64,
        bots: Some(files.truth.bots.len() as u64),
        humans: Some(files.truth.humans.len() as u64),
    };
    manifest.timing = Timing {
        started_utc,
        wall_seconds: started.elapsed().as_secs_f64(),
        parse_seconds: None,
        parse_mb_per_s: None,
    };
    bundle.finish(manifest)?;
    eprintln!(
        "fixture: {} users ({} bots), {} tweets at {}",
        spec.users,
        files.truth.bots.len(),
        files.truth.tweets,
        args.out.display()
    );
    Ok(())
}

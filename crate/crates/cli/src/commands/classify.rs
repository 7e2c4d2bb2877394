//! `botscope classify`: score every user in the archives against a trained
//! model; emit the population CSV and summary.

use crate::args::ClassifyArgs;
use crate::config::{pick, FileConfig};
use crate::error::CliError;
use crate::manifest::{hex_digest, BundleWriter, Counts, RunManifest, Timing};
use crate::outputs::population_csv;
use botscope_core::botdetect::{classify_population, Model, PopulationOptions};
use botscope_core::corpus::{
    scan_corpus_with_stats, IngestOptions, RecordSink, TweetRecord, UserTableBuilder,
};
use std::time::Instant;

struct TableSink {
    users: UserTableBuilder,
}

impl RecordSink for TableSink {
    fn absorb(&mut self, record: TweetRecord) {
        self.users.absorb(&record);
    }
}

pub fn run(args: ClassifyArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let started_utc = super::train::now_utc();
    let cfg = FileConfig::load(args.config.as_deref())?;
    let threads = pick(args.threads, cfg.threads, 0);
    let verified_are_human = args.verified_are_human || cfg.verified_are_human.unwrap_or(false);

    let model_body = std::fs::read_to_string(&args.model)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", args.model.display())))?;
    let model: Model = serde_json::from_str(&model_body)
        .map_err(|e| CliError::data(format!("bad model {}: {e}", args.model.display())))?;
    if !(model.threshold > 0.0 && model.threshold < 1.0) {
        return Err(CliError::data(format!(
            "model threshold {} outside (0, 1)",
            model.threshold
        )));
    }
    if model.weights.iter().any(|w| !w.is_finite()) || !model.bias.is_finite() {
        return Err(CliError::data("model weights are not finite".to_string()));
    }

    let mut sink = TableSink {
        users: UserTableBuilder::new(),
    };
    let (report, scan_stats) =
        scan_corpus_with_stats(&args.corpus, IngestOptions { threads }, &mut sink)?;
    let parse_seconds = scan_stats.parse_seconds;
    let table = sink.users.finish();

    let (rows, summary) = classify_population(
        &model,
        &table,
        PopulationOptions { verified_are_human },
    );
    if rows.is_empty() {
        eprintln!("warning: no users classified (empty corpus)");
    }

    let config_hash = hex_digest(
        serde_json::to_string(&serde_json::json!({
            "model_sha256": hex_digest(model_body.as_bytes()),
            "verified_are_human": verified_are_human,
        }))?
        .as_bytes(),
    );
    let mut bundle = BundleWriter::create(&args.out)?;
    bundle.write_text("population.csv", &population_csv(&rows))?;
    bundle.write_json("summary.json", &summary)?;
    bundle.write_json("ingest_report.json", &report)?;
    let mut manifest = RunManifest::new("classify", config_hash, model.manifest.seed);
    manifest.add_inputs(&args.corpus)?;
    manifest.counts = Counts {
        tweets: report.parsed,
        users: summary.n_users as u64,
        bots: Some(summary.n_bots as u64),
        humans: Some(summary.n_humans as u64),
    };
    manifest.timing = Timing {
        started_utc,
        wall_seconds: started.elapsed().as_secs_f64(),
        parse_seconds: Some(parse_seconds),
        parse_mb_per_s: Some(report.bytes as f64 / 1e6 / parse_seconds.max(1e-9)),
    };
    bundle.finish(manifest)?;

    match summary.bot_fraction {
        Some(fraction) => eprintln!(
            "classified {} users: {} bots / {} humans (bot fraction {:.4}), {} incomplete",
            summary.n_users, summary.n_bots, summary.n_humans, fraction, summary.incomplete
        ),
        None => eprintln!("classified 0 users"),
    }
    Ok(())
}

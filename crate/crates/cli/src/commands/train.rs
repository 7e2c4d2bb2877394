//! `botscope train`: CSV in, cross-validated model bundle out.

use crate::args::TrainArgs;
use crate::config::{pick, FileConfig};
use crate::error::CliError;
use crate::manifest::{hex_digest, BundleWriter, Counts, RunManifest, Timing};
use botscope_core::botdetect::{cross_validate, load_training_csv, train_logreg, Hyperparameters};
use botscope_core::time::format_utc;
use std::time::Instant;

pub fn run(args: TrainArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let started_utc = now_utc();
    let cfg = FileConfig::load(args.config.as_deref())?;
    let hyper = Hyperparameters {
        l2: pick(args.l2, cfg.l2, 1e-4),
        max_iters: pick(args.max_iters, cfg.max_iters, 5000),
        tol: pick(args.tol, cfg.tol, 1e-8),
        seed: pick(args.seed, cfg.seed, 0),
    };
    if hyper.l2 < 0.0 {
        return Err(CliError::usage("--l2 must be nonnegative"));
    }
    let folds = pick(args.folds, cfg.folds, 10);
    if folds == 1 {
        return Err(CliError::usage("--folds must be 0 (skip CV) or >= 2"));
    }

    let examples = load_training_csv(&args.training_csv)?;
    let report = if folds >= 2 {
        let report = cross_validate(&examples, folds, hyper)?;
        println!("fold  accuracy       auc");
        for (i, fold) in report.folds.iter().enumerate() {
            println!("{:>4}  {:>8.4}  {:>8.4}", i + 1, fold.accuracy, fold.auc);
        }
        println!(
            "mean  {:>8.4}  {:>8.4}",
            report.mean_accuracy, report.mean_auc
        );
        Some(report)
    } else {
        None
    };

    let mut model = train_logreg(&examples, hyper)?;
    model.manifest.fold_metrics = report.clone();

    let config_hash = hex_digest(
        serde_json::to_string(&serde_json::json!({
            "hyper": hyper,
            "folds": folds,
        }))?
        .as_bytes(),
    );
    let mut bundle = BundleWriter::create(&args.out)?;
    bundle.write_json("model.json", &model)?;
    if let Some(report) = &report {
        bundle.write_json("cv_report.json", report)?;
    }
    let mut manifest = RunManifest::new("train", config_hash, hyper.seed);
    manifest.add_inputs(std::slice::from_ref(&args.training_csv))?;
    manifest.counts = Counts {
        tweets: 0,
        users: examples.len() as u64,
        bots: Some(model.manifest.n_bots as u64),
        humans: Some(model.manifest.n_humans as u64),
    };
    manifest.timing = Timing {
        started_utc,
        wall_seconds: started.elapsed().as_secs_f64(),
        parse_seconds: None,
        parse_mb_per_s: None,
    };
    bundle.finish(manifest)?;
    eprintln!(
        "trained on {} examples ({} bots / {} humans), model at {}",
        examples.len(),
        model.manifest.n_bots,
        model.manifest.n_humans,
        args.out.join("model.json").display()
    );
    Ok(())
}

pub fn now_utc() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs() as i64)
        .unwrap_or(0);
    format_utc(secs)
}

//! `botscope analyze`: one scan of the archives, a report bundle of every
//! selected analytic, and campaign-scoped mirrors when campaign terms are
//! given.

use crate::args::AnalyzeArgs;
use crate::config::{pick, FileConfig};
use crate::error::CliError;
use crate::manifest::{hex_digest, BundleWriter, Counts, RunManifest, Timing};
use crate::outputs::{
    bot_activity_csv, distribution_files, follower_deltas_csv, rank_table_csv, timeline_csv,
    StatusMap,
};
use botscope_core::analytics::{
    bot_activity_summary, compare_groups, creation_gap_candidates, detect_dormant,
    feature_correlations, follower_deltas, load_traces, AnalyzeAccumulator, AnalyzeOptions,
    CampaignSplitSink, DormancyParams, DormancyReport, Partition, RankKind, Stoplist,
    TimelineOptions, Window,
};
use botscope_core::botdetect::UserClass;
use botscope_core::corpus::{scan_corpus_with_stats, CampaignFilter, IngestOptions, MatchFields};
use botscope_core::stats::TTestVariant;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

const ALL_SELECTORS: [&str; 8] = [
    "timeline",
    "ranks",
    "languages",
    "distributions",
    "compare",
    "correlate",
    "deltas",
    "dormancy",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Selected {
    timeline: bool,
    ranks: bool,
    languages: bool,
    distributions: bool,
    compare: bool,
    correlate: bool,
    deltas: bool,
    dormancy: bool,
}

#[derive(Debug, Serialize)]
struct ResolvedOptions {
    bin_seconds: u32,
    top_k: usize,
    deltas_k: usize,
    split_retweets: bool,
    t_variant: String,
    campaign_terms: Vec<String>,
    campaign_fields: String,
    selectors: Vec<String>,
    min_a: u64,
    min_b: u64,
    max_gap: u64,
    window_a: Option<Window>,
    window_b: Option<Window>,
    partition: Option<String>,
    traces: Option<String>,
    extra_stopwords: Option<String>,
    status_file: Option<String>,
}

/// Load the optional account-status sidecar (`user_id,status` with header).
fn load_status_file(path: &Path) -> Result<StatusMap, CliError> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    let mut map = StatusMap::new();
    for (idx, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || (idx == 0 && line.starts_with("user_id")) {
            continue;
        }
        let Some((user, status)) = line.split_once(',') else {
            return Err(CliError::data(format!(
                "{}:{}: expected `user_id,status`",
                path.display(),
                idx + 1
            )));
        };
        map.insert(user.trim().to_string(), status.trim().to_string());
    }
    Ok(map)
}

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let started_utc = super::train::now_utc();
    let cfg = FileConfig::load(args.config.as_deref())?;

    let bin_seconds = pick(args.bin_seconds, cfg.bin_seconds, 60);
    if bin_seconds == 0 {
        return Err(CliError::usage("--bin-seconds must be at least 1"));
    }
    let top_k = pick(args.top_k, cfg.top_k, 20);
    if top_k == 0 {
        return Err(CliError::usage("--top-k must be at least 1"));
    }
    let deltas_k = pick(args.deltas_k, cfg.deltas_k, 10);
    let threads = pick(args.threads, cfg.threads, 0);
    let split_retweets = args.split_retweets || cfg.split_retweets.unwrap_or(false);
    let t_variant_name = pick(args.t_variant.clone(), cfg.t_variant.clone(), "welch".into());
    let t_variant: TTestVariant = t_variant_name.parse().map_err(CliError::Usage)?;
    let min_a = pick(args.min_a, cfg.min_a, 5);
    let min_b = pick(args.min_b, cfg.min_b, 5);
    let max_gap = pick(args.max_gap, cfg.max_gap, 1);

    let campaign_terms: Vec<String> = match (&args.campaign_terms, &cfg.campaign_terms) {
        (Some(raw), _) => raw.split(',').map(|s| s.trim().to_string()).collect(),
        (None, Some(list)) => list.clone(),
        (None, None) => Vec::new(),
    };
    let campaign_fields_name = pick(
        args.campaign_fields.clone(),
        cfg.campaign_fields.clone(),
        "hashtags,text".into(),
    );
    let campaign_fields = parse_match_fields(&campaign_fields_name)?;
    let campaign_filter = if campaign_terms.is_empty() {
        None
    } else {
        Some(
            CampaignFilter::new(&campaign_terms, campaign_fields)
                .map_err(|e| CliError::usage(e.to_string()))?,
        )
    };

    let partition = match &args.partition {
        Some(path) => Some(Arc::new(super::load_partition(path)?)),
        None => None,
    };
    let statuses: Option<StatusMap> = args
        .status_file
        .as_deref()
        .map(load_status_file)
        .transpose()?;
    let window_a = args
        .window_a
        .as_deref()
        .map(|w| super::parse_window(w, "window-a"))
        .transpose()?;
    let window_b = args
        .window_b
        .as_deref()
        .map(|w| super::parse_window(w, "window-b"))
        .transpose()?;
    let dormancy_params = match (window_a, window_b) {
        (Some(a), Some(b)) => {
            let mut p = DormancyParams::new(a, b);
            p.min_a = min_a;
            p.min_b = min_b;
            p.max_gap = max_gap;
            Some(p)
        }
        (None, None) => None,
        _ => {
            return Err(CliError::usage(
                "--window-a and --window-b must be given together",
            ))
        }
    };

    let selected = resolve_selectors(
        args.select.as_deref(),
        partition.is_some(),
        dormancy_params.is_some(),
    )?;

    let mut stoplist = Stoplist::bundled();
    if let Some(path) = &args.extra_stopwords {
        let body = std::fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        stoplist.extend(body.lines());
    }

    // One scan of the archives feeds everything.
    let analyze_opts = AnalyzeOptions {
        timeline: TimelineOptions {
            bin_seconds,
            split_retweets,
            partition: partition.clone(),
        },
        stoplist,
    };
    let mut sink = CampaignSplitSink::new(analyze_opts, campaign_filter);
    let (report, scan_stats) =
        scan_corpus_with_stats(&args.corpus, IngestOptions { threads }, &mut sink)?;
    let parse_seconds = scan_stats.parse_seconds;

    let selectors_list: Vec<String> = ALL_SELECTORS
        .iter()
        .filter(|s| selector_enabled(&selected, s))
        .map(|s| s.to_string())
        .collect();
    let resolved = ResolvedOptions {
        bin_seconds,
        top_k,
        deltas_k,
        split_retweets,
        t_variant: t_variant_name.clone(),
        campaign_terms: campaign_terms.clone(),
        campaign_fields: campaign_fields_name.clone(),
        selectors: selectors_list,
        min_a,
        min_b,
        max_gap,
        window_a,
        window_b,
        partition: args.partition.as_ref().map(|p| p.display().to_string()),
        traces: args.traces.as_ref().map(|p| p.display().to_string()),
        extra_stopwords: args.extra_stopwords.as_ref().map(|p| p.display().to_string()),
        status_file: args.status_file.as_ref().map(|p| p.display().to_string()),
    };
    let config_hash = hex_digest(serde_json::to_string(&resolved)?.as_bytes());

    let mut bundle = BundleWriter::create(&args.out)?;
    bundle.write_json("ingest_report.json", &report)?;
    bundle.write_json("options.json", &resolved)?;

    let campaign_acc = sink.campaign.map(|(_, acc)| acc);
    let scope_cfg = ScopeConfig {
        selected,
        t_variant,
        top_k,
        deltas_k,
        dormancy: dormancy_params,
        statuses,
    };
    let all_counts = write_scope(
        &mut bundle,
        "",
        sink.all,
        &scope_cfg,
        partition.as_deref(),
        args.traces.as_deref(),
    )?;
    if let Some(acc) = campaign_acc {
        if acc.tweets == 0 {
            eprintln!("warning: campaign terms matched no tweets; campaign outputs are empty");
        }
        write_scope(
            &mut bundle,
            "campaign/",
            acc,
            &scope_cfg,
            partition.as_deref(),
            None,
        )?;
    }

    let mut manifest = RunManifest::new("analyze", config_hash, 0);
    manifest.add_inputs(&args.corpus)?;
    manifest.counts = all_counts;
    manifest.timing = Timing {
        started_utc,
        wall_seconds: started.elapsed().as_secs_f64(),
        parse_seconds: Some(parse_seconds),
        parse_mb_per_s: Some(report.bytes as f64 / 1e6 / parse_seconds.max(1e-9)),
    };
    bundle.finish(manifest)?;
    eprintln!(
        "analyzed {} tweets ({} parse failures) into {}",
        report.parsed,
        report.failed,
        args.out.display()
    );
    Ok(())
}

fn selector_enabled(s: &Selected, name: &str) -> bool {
    match name {
        "timeline" => s.timeline,
        "ranks" => s.ranks,
        "languages" => s.languages,
        "distributions" => s.distributions,
        "compare" => s.compare,
        "correlate" => s.correlate,
        "deltas" => s.deltas,
        "dormancy" => s.dormancy,
        _ => false,
    }
}

fn resolve_selectors(
    raw: Option<&str>,
    have_partition: bool,
    have_windows: bool,
) -> Result<Selected, CliError> {
    match raw {
        None => Ok(Selected {
            timeline: true,
            ranks: true,
            languages: true,
            distributions: true,
            compare: have_partition,
            correlate: have_partition,
            deltas: have_partition,
            dormancy: have_windows,
        }),
        Some(raw) => {
            let mut selected = Selected {
                timeline: false,
                ranks: false,
                languages: false,
                distributions: false,
                compare: false,
                correlate: false,
                deltas: false,
                dormancy: false,
            };
            for token in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                match token {
                    "all" => {
                        return resolve_selectors(
                            Some(&ALL_SELECTORS.join(",")),
                            have_partition,
                            have_windows,
                        )
                    }
                    "timeline" => selected.timeline = true,
                    "ranks" => selected.ranks = true,
                    "languages" => selected.languages = true,
                    "distributions" => selected.distributions = true,
                    "compare" => selected.compare = true,
                    "correlate" => selected.correlate = true,
                    "deltas" => selected.deltas = true,
                    "dormancy" => selected.dormancy = true,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown selector `{other}` (expected one of {})",
                            ALL_SELECTORS.join(", ")
                        )))
                    }
                }
            }
            if (selected.compare || selected.correlate || selected.deltas) && !have_partition {
                return Err(CliError::usage(
                    "selectors compare/correlate/deltas need --partition",
                ));
            }
            if selected.dormancy && !have_windows {
                return Err(CliError::usage(
                    "selector dormancy needs --window-a and --window-b",
                ));
            }
            Ok(selected)
        }
    }
}

fn parse_match_fields(raw: &str) -> Result<MatchFields, CliError> {
    let mut fields = MatchFields {
        hashtags: false,
        text: false,
    };
    for token in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token {
            "hashtags" => fields.hashtags = true,
            "text" => fields.text = true,
            other => {
                return Err(CliError::usage(format!(
                    "--campaign-fields: unknown field `{other}`"
                )))
            }
        }
    }
    if !fields.hashtags && !fields.text {
        return Err(CliError::usage(
            "--campaign-fields must name hashtags, text, or both",
        ));
    }
    Ok(fields)
}

struct ScopeConfig {
    selected: Selected,
    t_variant: TTestVariant,
    top_k: usize,
    deltas_k: usize,
    dormancy: Option<DormancyParams>,
    statuses: Option<StatusMap>,
}

fn write_scope(
    bundle: &mut BundleWriter,
    prefix: &str,
    acc: AnalyzeAccumulator,
    cfg: &ScopeConfig,
    partition: Option<&Partition>,
    traces_file: Option<&Path>,
) -> Result<Counts, CliError> {
    let ScopeConfig {
        selected,
        t_variant,
        top_k,
        deltas_k,
        dormancy,
        statuses,
    } = cfg;
    let (t_variant, top_k, deltas_k) = (*t_variant, *top_k, *deltas_k);
    let products = acc.finish();
    let empty_scope = products.tweets == 0;

    if selected.timeline {
        for series in &products.timelines {
            bundle.write_text(
                &format!("{prefix}series/timeline_{}.csv", series.label),
                &timeline_csv(series),
            )?;
        }
        if empty_scope {
            // Keep the bundle shape stable for empty campaign scopes.
            bundle.write_text(
                &format!("{prefix}series/timeline_all.csv"),
                "bin_start_utc,bin_start_epoch,count\n",
            )?;
        }
    }
    if selected.ranks {
        for (kind, stem) in [
            (RankKind::Hashtag, "hashtags"),
            (RankKind::Mention, "mentions"),
            (RankKind::Url, "urls"),
            (RankKind::Token, "tokens"),
            (RankKind::ProfileToken, "profile_tokens"),
        ] {
            let table = products.entities.table(kind, top_k);
            bundle.write_text(&format!("{prefix}tables/{stem}.csv"), &rank_table_csv(&table))?;
        }
    }
    if selected.languages {
        let n_langs = products.entities.languages.len().max(1);
        let table = products.entities.table(RankKind::Language, n_langs);
        bundle.write_text(
            &format!("{prefix}tables/languages.csv"),
            &rank_table_csv(&table),
        )?;
    }
    if selected.distributions {
        for (name, body) in distribution_files(&products.distributions) {
            bundle.write_text(&format!("{prefix}series/{name}"), &body)?;
        }
    }
    if selected.compare {
        let partition = partition.expect("selector guard");
        if empty_scope {
            bundle.write_json(
                &format!("{prefix}comparisons.json"),
                &serde_json::json!({"rows": [], "note": "empty scope"}),
            )?;
        } else {
            let comparison = compare_groups(&products.user_table, partition, t_variant)?;
            bundle.write_json(&format!("{prefix}comparisons.json"), &comparison)?;
        }
    }
    if selected.correlate {
        let partition = partition.expect("selector guard");
        if empty_scope {
            bundle.write_json(
                &format!("{prefix}correlations.json"),
                &serde_json::json!({"note": "empty scope"}),
            )?;
        } else {
            let correlations = feature_correlations(&products.user_table, partition)?;
            bundle.write_json(&format!("{prefix}correlations.json"), &correlations)?;
        }
    }
    if selected.deltas {
        let partition = partition.expect("selector guard");
        let rows = follower_deltas(
            &products.retweet_events,
            &products.user_table,
            partition,
            deltas_k,
        );
        bundle.write_text(
            &format!("{prefix}tables/follower_deltas.csv"),
            &follower_deltas_csv(&rows, statuses.as_ref()),
        )?;
        let activity = bot_activity_summary(&products.user_table, partition, deltas_k);
        bundle.write_text(
            &format!("{prefix}tables/top_bots_by_activity.csv"),
            &bot_activity_csv(&activity, statuses.as_ref()),
        )?;
    }
    if selected.dormancy {
        let params = dormancy.as_ref().expect("selector guard");
        let activity: BTreeMap<String, Vec<i64>> = match traces_file {
            Some(path) => load_traces(path)?,
            None => products
                .user_table
                .iter_sorted()
                .into_iter()
                .map(|(user_id, entry)| (user_id.clone(), entry.tweet_timestamps.clone()))
                .collect(),
        };
        let report = DormancyReport {
            flagged: detect_dormant(&activity, params)?,
            creation_gap_candidates: creation_gap_candidates(&products.user_table, params)?,
        };
        bundle.write_json(&format!("{prefix}dormancy.json"), &report)?;
    }

    let (bots, humans) = match partition {
        Some(partition) => {
            let mut bots = 0u64;
            let mut humans = 0u64;
            for (user_id, _) in products.user_table.iter() {
                match partition.class_of(user_id) {
                    Some(UserClass::Bot) => bots += 1,
                    Some(UserClass::Human) => humans += 1,
                    None => {}
                }
            }
            (Some(bots), Some(humans))
        }
        None => (None, None),
    };
    Ok(Counts {
        tweets: products.tweets,
        users: products.user_table.len() as u64,
        bots,
        humans,
    })
}

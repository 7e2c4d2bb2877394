//! Multi-file corpus scans: gzip detection by magic bytes, pipelined
//! block-parallel parsing, first-wins dedup by tweet_id, and ingest
//! accounting.
//!
//! Lines are split into fixed-size blocks. Each block is parsed on a rayon
//! pool while the previous block's records are deduplicated and folded into
//! the sink, strictly in file order. Block boundaries depend only on line
//! positions and the fold order is fixed, so the result is bit-identical
//! for any thread count.

use super::parse::{parse_record, ParseFailure};
use super::TweetRecord;
use serde::Serialize;
use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};
use thiserror::Error;

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

type LineBlock = Vec<(u64, String)>;
const BLOCK_LINES: usize = 8_192;
const MAX_FAILURE_SAMPLES: usize = 50;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Ingest accounting. Conservation invariant:
/// `parsed + failed + duplicate_ids == lines`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct IngestReport {
    pub lines: u64,
    pub parsed: u64,
    pub failed: u64,
    pub duplicate_ids: u64,
    pub bytes: u64,
    pub files: Vec<String>,
    /// First few failures, formatted `path:line: reason`.
    pub failure_samples: Vec<String>,
}

impl IngestReport {
    fn record_failure(&mut self, path: &Path, failure: &ParseFailure) {
        self.failed += 1;
        if self.failure_samples.len() < MAX_FAILURE_SAMPLES {
            self.failure_samples.push(format!(
                "{}:{}: {}",
                path.display(),
                failure.line,
                failure.reason
            ));
        }
    }
}

/// Scan-time knobs. `threads == 0` uses the rayon default.
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    pub threads: usize,
}

/// Consumer of the deduplicated record stream, fed in file order.
pub trait RecordSink: Send {
    fn absorb(&mut self, record: TweetRecord);
}

impl RecordSink for Vec<TweetRecord> {
    fn absorb(&mut self, record: TweetRecord) {
        self.push(record);
    }
}

/// Wall-clock phase breakdown of a scan; reporting only, never part of any
/// reproducible output.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanStats {
    /// Time spent reading lines and parsing them into records.
    pub parse_seconds: f64,
    /// Time spent deduplicating and folding records into the sink.
    pub absorb_seconds: f64,
}

fn open_lines(path: &Path) -> Result<Box<dyn BufRead>, CorpusError> {
    let io_err = |source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut probe = File::open(path).map_err(io_err)?;
    let mut magic = [0u8; 2];
    let n = probe.read(&mut magic).map_err(io_err)?;
    let file = File::open(path).map_err(io_err)?;
    if n == 2 && magic == GZIP_MAGIC {
        Ok(Box::new(BufReader::with_capacity(
            1 << 18,
            flate2::read::MultiGzDecoder::new(file),
        )))
    } else {
        Ok(Box::new(BufReader::with_capacity(1 << 18, file)))
    }
}

/// Stream every archive in `paths` through `sink`.
///
/// Parsing of each block overlaps the fold of the previous one; the sink
/// sees records in file order with duplicate tweet_ids (after the first)
/// dropped and counted, identically for any thread count. An unreadable
/// file aborts the scan with its path named. Whitespace-only lines are
/// ignored entirely.
pub fn scan_corpus_with_stats<S: RecordSink>(
    paths: &[PathBuf],
    opts: IngestOptions,
    sink: &mut S,
) -> Result<(IngestReport, ScanStats), CorpusError> {
    use rayon::prelude::*;
    use std::time::Instant;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("rayon pool");
    let mut report = IngestReport::default();
    let mut stats = ScanStats::default();
    let mut seen_ids: HashSet<String> = HashSet::new();

    for path in paths {
        report.files.push(path.display().to_string());
        let reader = open_lines(path)?;
        let mut lines = reader.lines();
        let mut line_no: u64 = 0;

        // Serial block reader; counts raw bytes and non-blank lines and
        // returns the wall time it spent.
        let mut read_block = |report: &mut IngestReport| -> Result<
            (Option<LineBlock>, f64),
            CorpusError,
        > {
            let started = Instant::now();
            let mut block: LineBlock = Vec::with_capacity(BLOCK_LINES);
            while block.len() < BLOCK_LINES {
                match lines.next() {
                    Some(Ok(line)) => {
                        line_no += 1;
                        report.bytes += line.len() as u64 + 1;
                        if line.trim().is_empty() {
                            continue;
                        }
                        report.lines += 1;
                        block.push((line_no, line));
                    }
                    Some(Err(source)) => {
                        return Err(CorpusError::Io {
                            path: path.display().to_string(),
                            source,
                        })
                    }
                    None => break,
                }
            }
            let elapsed = started.elapsed().as_secs_f64();
            Ok((
                if block.is_empty() { None } else { Some(block) },
                elapsed,
            ))
        };

        // Alternate phases per block: parse on the pool, then fold into the
        // sink sequentially in file order.
        loop {
            let (block, read_elapsed) = read_block(&mut report)?;
            stats.parse_seconds += read_elapsed;
            let Some(block) = block else { break };
            let parse_started = Instant::now();
            let parsed: Vec<Result<TweetRecord, ParseFailure>> = pool.install(|| {
                block
                    .par_iter()
                    .map(|(no, line)| parse_record(line, *no))
                    .collect()
            });
            stats.parse_seconds += parse_started.elapsed().as_secs_f64();
            drop(block);
            let absorb_started = Instant::now();
            for result in parsed {
                match result {
                    Ok(record) => {
                        if seen_ids.insert(record.tweet_id.clone()) {
                            report.parsed += 1;
                            sink.absorb(record);
                        } else {
                            report.duplicate_ids += 1;
                        }
                    }
                    Err(failure) => report.record_failure(path, &failure),
                }
            }
            stats.absorb_seconds += absorb_started.elapsed().as_secs_f64();
        }
    }
    Ok((report, stats))
}

/// [`scan_corpus_with_stats`] without the timing breakdown.
pub fn scan_corpus<S: RecordSink>(
    paths: &[PathBuf],
    opts: IngestOptions,
    sink: &mut S,
) -> Result<IngestReport, CorpusError> {
    scan_corpus_with_stats(paths, opts, sink).map(|(report, _)| report)
}

/// Eagerly load whole archives; convenience for fixtures and small corpora.
pub fn load_corpus(
    paths: &[PathBuf],
    opts: IngestOptions,
) -> Result<(Vec<TweetRecord>, IngestReport), CorpusError> {
    let mut records = Vec::new();
    let report = scan_corpus(paths, opts, &mut records)?;
    Ok((records, report))
}

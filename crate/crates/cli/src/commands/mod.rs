//! Command implementations and shared argument plumbing.

pub mod analyze;
pub mod classify;
pub mod gen_fixture;
pub mod train;
pub mod validate;

use crate::error::CliError;
use botscope_core::analytics::{Partition, Window};
use botscope_core::botdetect::UserClass;
use botscope_core::time::parse_utc;
use std::path::Path;

/// Parse "start..end" with ISO-8601 or epoch-second endpoints.
pub fn parse_window(raw: &str, flag: &str) -> Result<Window, CliError> {
    let Some((lo, hi)) = raw.split_once("..") else {
        return Err(CliError::usage(format!(
            "--{flag} expects start..end, got `{raw}`"
        )));
    };
    let start = parse_utc(lo)
        .ok_or_else(|| CliError::usage(format!("--{flag}: bad timestamp `{lo}`")))?;
    let end = parse_utc(hi)
        .ok_or_else(|| CliError::usage(format!("--{flag}: bad timestamp `{hi}`")))?;
    if start >= end {
        return Err(CliError::usage(format!(
            "--{flag}: start must precede end"
        )));
    }
    Ok(Window { start, end })
}

/// Load a user_id -> class partition from CSV. Accepts the population CSV
/// emitted by `classify` (or any CSV whose header names a user_id and a
/// label column; labels are bot/human or 1/0).
pub fn load_partition(path: &Path) -> Result<Partition, CliError> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = body.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::data(format!("{}: empty file", path.display())));
    };
    let columns: Vec<&str> = header.trim().split(',').collect();
    let user_col = columns
        .iter()
        .position(|c| *c == "user_id")
        .ok_or_else(|| CliError::data(format!("{}: no user_id column", path.display())))?;
    let label_col = columns
        .iter()
        .position(|c| *c == "label")
        .ok_or_else(|| CliError::data(format!("{}: no label column", path.display())))?;
    let mut partition = Partition::default();
    for (idx, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() <= user_col.max(label_col) {
            return Err(CliError::data(format!(
                "{}:{}: short row",
                path.display(),
                idx + 1
            )));
        }
        let class: UserClass = fields[label_col].parse().map_err(|e| {
            CliError::data(format!("{}:{}: {e}", path.display(), idx + 1))
        })?;
        partition.insert(fields[user_col].to_string(), class);
    }
    Ok(partition)
}

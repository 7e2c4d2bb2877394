//! Training-data CSV loading. The header is fixed: label first, then the
//! ten features in canonical order.

use super::{FeatureVector, LabeledExample, FEATURE_COUNT};
use std::path::Path;
use thiserror::Error;

pub const TRAINING_HEADER: &str = "label,statuses_count,followers_count,friends_count,favourites_count,listed_count,default_profile,geo_enabled,profile_use_background_image,verified,protected";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad header: expected `{TRAINING_HEADER}`, got `{0}`")]
    BadHeader(String),
    #[error("line {line}: expected {expected} fields, got {got}")]
    FieldCount {
        line: u64,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: bad {field}: {value}")]
    BadValue {
        line: u64,
        field: &'static str,
        value: String,
    },
    #[error("{path} contains no data rows")]
    Empty { path: String },
}

const FIELD_NAMES: [&str; FEATURE_COUNT] = super::FEATURE_NAMES;

/// Load labeled examples from CSV. Labels and the five booleans must be 0
/// or 1; counts must be finite nonnegative reals.
pub fn load_training_csv(path: &Path) -> Result<Vec<LabeledExample>, DataError> {
    let contents = std::fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut lines = contents.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim(),
            None => {
                return Err(DataError::Empty {
                    path: path.display().to_string(),
                })
            }
        }
    };
    if header != TRAINING_HEADER {
        return Err(DataError::BadHeader(header.to_string()));
    }
    let mut examples = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx as u64 + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != FEATURE_COUNT + 1 {
            return Err(DataError::FieldCount {
                line: line_no,
                expected: FEATURE_COUNT + 1,
                got: fields.len(),
            });
        }
        let label = parse_binary(fields[0], line_no, "label")?;
        let mut values = [0.0; FEATURE_COUNT];
        for (j, v) in values.iter_mut().enumerate() {
            let raw_value = fields[j + 1].trim();
            if j < super::COUNT_FEATURE_COUNT {
                let parsed: f64 = raw_value.parse().map_err(|_| DataError::BadValue {
                    line: line_no,
                    field: FIELD_NAMES[j],
                    value: raw_value.to_string(),
                })?;
                if !parsed.is_finite() || parsed < 0.0 {
                    return Err(DataError::BadValue {
                        line: line_no,
                        field: FIELD_NAMES[j],
                        value: raw_value.to_string(),
                    });
                }
                *v = parsed;
            } else {
                *v = f64::from(parse_binary(raw_value, line_no, FIELD_NAMES[j])?);
            }
        }
        examples.push(LabeledExample::new(
            FeatureVector {
                values,
                complete: true,
            },
            label,
            format!("{}:{}", path.display(), line_no),
        ));
    }
    if examples.is_empty() {
        return Err(DataError::Empty {
            path: path.display().to_string(),
        });
    }
    Ok(examples)
}

fn parse_binary(raw: &str, line: u64, field: &'static str) -> Result<u8, DataError> {
    match raw.trim() {
        "0" => Ok(0),
        "1" => Ok(1),
        other => Err(DataError::BadValue {
            line,
            field,
            value: other.to_string(),
        }),
    }
}

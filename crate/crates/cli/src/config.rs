//! Optional JSON config file. Keys mirror the long flag names; explicit
//! flags always win over config values, which win over built-in defaults.

use crate::error::CliError;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub l2: Option<f64>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub folds: Option<usize>,
    pub threads: Option<usize>,
    pub bin_seconds: Option<u32>,
    pub top_k: Option<usize>,
    pub deltas_k: Option<usize>,
    pub campaign_terms: Option<Vec<String>>,
    pub campaign_fields: Option<String>,
    pub split_retweets: Option<bool>,
    pub t_variant: Option<String>,
    pub min_a: Option<u64>,
    pub min_b: Option<u64>,
    pub max_gap: Option<u64>,
    pub verified_are_human: Option<bool>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let body = std::fs::read_to_string(p).map_err(|e| {
                    CliError::data(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&body).map_err(|e| {
                    CliError::usage(format!("bad config {}: {e}", p.display()))
                })
            }
        }
    }
}

/// flag > config > default
pub fn pick<T: Clone>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_is_flag_config_default() {
        assert_eq!(pick(Some(1), Some(2), 3), 1);
        assert_eq!(pick(None, Some(2), 3), 2);
        assert_eq!(pick::<u32>(None, None, 3), 3);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = std::env::temp_dir().join("botscope-config-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{}-cfg.json", std::process::id()));
        std::fs::write(&path, r#"{"top_k": 5, "bogus": 1}"#).unwrap();
        assert!(FileConfig::load(Some(&path)).is_err());
        std::fs::write(&path, r#"{"top_k": 5, "seed": 9}"#).unwrap();
        let cfg = FileConfig::load(Some(&path)).unwrap();
        assert_eq!(cfg.top_k, Some(5));
        assert_eq!(cfg.seed, Some(9));
    }
}

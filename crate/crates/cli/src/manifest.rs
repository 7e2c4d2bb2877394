//! Run manifests and self-describing report bundles. Every output file is
//! listed in manifest.json with its sha256; `validate-bundle` re-hashes
//! them. Timing is the one manifest section allowed to differ between
//! otherwise identical runs.

use crate::error::CliError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

pub fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_digest(path: &Path) -> Result<(String, u64), CliError> {
    let mut file = fs::File::open(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 20];
    let mut total = 0u64;
    loop {
        let n = file
            .read(&mut buf)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        if n == 0 {
            break;
        }
        total += n as u64;
        hasher.update(&buf[..n]);
    }
    let digest = hasher.finalize();
    Ok((digest.iter().map(|b| format!("{b:02x}")).collect(), total))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputEntry {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Counts {
    pub tweets: u64,
    pub users: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub humans: Option<u64>,
}

/// Wall-clock section; excluded from reproducibility comparisons.
/// `parse_seconds` covers the read+parse phases of the corpus scan only;
/// aggregation time is not parsing and is excluded from the throughput
/// figure.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Timing {
    pub started_utc: String,
    pub wall_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse_mb_per_s: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    /// Digest of the resolved semantic options (thread counts excluded:
    /// parallelism must not change any output).
    pub config_hash: String,
    pub seed: u64,
    pub inputs: Vec<InputEntry>,
    pub counts: Counts,
    pub outputs: Vec<OutputEntry>,
    pub timing: Timing,
}

impl RunManifest {
    pub fn new(command: &str, config_hash: String, seed: u64) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_hash,
            seed,
            inputs: Vec::new(),
            counts: Counts::default(),
            outputs: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn add_inputs(&mut self, paths: &[PathBuf]) -> Result<(), CliError> {
        for p in paths {
            let (sha256, bytes) = file_digest(p)?;
            self.inputs.push(InputEntry {
                path: p.display().to_string(),
                sha256,
                bytes,
            });
        }
        Ok(())
    }
}

/// Collects bundle files and their digests, then seals the manifest.
pub struct BundleWriter {
    root: PathBuf,
    outputs: Vec<OutputEntry>,
}

impl BundleWriter {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root)
            .map_err(|e| CliError::data(format!("cannot create {}: {e}", root.display())))?;
        Ok(BundleWriter {
            root: root.to_path_buf(),
            outputs: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write_text(&mut self, rel: &str, contents: &str) -> Result<(), CliError> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::data(format!("cannot create {}: {e}", parent.display())))?;
        }
        fs::write(&path, contents)
            .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(OutputEntry {
            path: rel.to_string(),
            sha256: hex_digest(contents.as_bytes()),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, rel: &str, value: &T) -> Result<(), CliError> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        self.write_text(rel, &body)
    }

    /// Digest a file some other component already wrote into the bundle.
    pub fn record_existing(&mut self, rel: &str) -> Result<(), CliError> {
        let (sha256, _) = file_digest(&self.root.join(rel))?;
        self.outputs.push(OutputEntry {
            path: rel.to_string(),
            sha256,
        });
        Ok(())
    }

    /// Write manifest.json (itself not listed in outputs) and return the
    /// sealed manifest.
    pub fn finish(self, mut manifest: RunManifest) -> Result<RunManifest, CliError> {
        let mut outputs = self.outputs;
        outputs.sort_by(|a, b| a.path.cmp(&b.path));
        manifest.outputs = outputs;
        let mut body = serde_json::to_string_pretty(&manifest)?;
        body.push('\n');
        let path = self.root.join("manifest.json");
        fs::write(&path, body)
            .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))?;
        Ok(manifest)
    }
}

/// Re-hash every output listed in the bundle manifest. Returns mismatch
/// descriptions (empty = valid).
pub fn validate_bundle(root: &Path) -> Result<Vec<String>, CliError> {
    let manifest_path = root.join("manifest.json");
    let body = fs::read_to_string(&manifest_path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", manifest_path.display())))?;
    let manifest: RunManifest = serde_json::from_str(&body)
        .map_err(|e| CliError::data(format!("bad manifest {}: {e}", manifest_path.display())))?;
    let mut problems = Vec::new();
    for entry in &manifest.outputs {
        let path = root.join(&entry.path);
        match file_digest(&path) {
            Ok((digest, _)) => {
                if digest != entry.sha256 {
                    problems.push(format!(
                        "{}: digest mismatch (manifest {}, file {digest})",
                        entry.path, entry.sha256
                    ));
                }
            }
            Err(_) => problems.push(format!("{}: missing", entry.path)),
        }
    }
    Ok(problems)
}

//! Append-only JSON-lines memo store for arrow results.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use phcalc_core::{ArrowQuery, ArrowReport};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Results are reused only when they were written by this engine version.
pub const ENGINE_VERSION: &str = concat!("phcalc/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub result: ArrowReport,
    pub engine: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// Canonical JSON of the query, keys sorted.
pub fn query_key(q: &ArrowQuery) -> String {
    // serde_json maps are ordered by key
    serde_json::to_value(q).expect("query serializes").to_string()
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, ArrowReport>,
}

impl Cache {
    /// Loads the store; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Cache, CliError> {
        let mut entries = HashMap::new();
        let file = match std::fs::File::open(path) {
            Ok(f) => Some(f),
            Err(e) if e.kind() == ErrorKind::NotFound => None,
            Err(e) => return Err(CliError::Input(format!("{}: {e}", path.display()))),
        };
        if let Some(file) = file {
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: CacheEntry = serde_json::from_str(&line)
                    .map_err(|e| CliError::Data(format!("{}:{}: {e}", path.display(), i + 1)))?;
                if entry.engine != ENGINE_VERSION {
                    continue;
                }
                if let Some(old) = entries.get(&entry.key) {
                    if *old != entry.result {
                        return Err(CliError::Data(format!(
                            "{}:{}: conflicting results for {}",
                            path.display(),
                            i + 1,
                            entry.key
                        )));
                    }
                }
                entries.insert(entry.key, entry.result);
            }
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn get(&self, q: &ArrowQuery) -> Option<&ArrowReport> {
        self.entries.get(&query_key(q))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends a fresh result. Known keys are never written again.
    pub fn put(&mut self, report: &ArrowReport) -> Result<(), CliError> {
        let key = query_key(&report.query);
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let entry = CacheEntry {
            key: key.clone(),
            result: report.clone(),
            engine: ENGINE_VERSION.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        let mut line = serde_json::to_string(&entry).expect("entry serializes");
        line.push('\n');
        let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", self.path.display()));
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        // one write per line keeps entries whole
        file.write_all(line.as_bytes()).map_err(io)?;
        file.flush().map_err(io)?;
        self.entries.insert(key, report.clone());
        Ok(())
    }
}

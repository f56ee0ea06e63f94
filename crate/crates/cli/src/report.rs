//! `report.json` and per-observable CSV files.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hypwalk::estimators::{ExperimentResult, Record};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub library_version: String,
    /// SHA-256 of the compact JSON encoding of `config`.
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub result: ExperimentResult,
}

impl Report {
    pub fn new(config: &ExperimentConfig, result: ExperimentResult) -> Self {
        let config = config.effective();
        Report {
            tool: "hypwalk".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            library_version: hypwalk::VERSION.into(),
            config_hash: config_hash(&config),
            config,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Writes `report.json` and one `<observable>.csv` per observable into
    /// `dir`, returning the files written.
    pub fn write(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let json = dir.join("report.json");
        fs::write(&json, self.to_json())?;
        let mut written = vec![json];
        let mut tracks: BTreeMap<&str, Vec<&Record>> = BTreeMap::new();
        for r in &self.result.records {
            tracks.entry(r.observable.as_str()).or_default().push(r);
        }
        for (observable, rows) in tracks {
            let path = dir.join(format!("{}.csv", file_stem(observable)));
            let mut w = csv::Writer::from_path(&path)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn config_hash(config: &ExperimentConfig) -> String {
    let bytes = serde_json::to_vec(config).expect("configs serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn file_stem(observable: &str) -> String {
    observable
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

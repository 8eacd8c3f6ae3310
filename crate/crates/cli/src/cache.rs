//! One JSON file per job fingerprint. Records from another engine version,
//! or that fail to parse, are misses.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::job::{JobSpec, Payload};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultRecord {
    pub fingerprint: String,
    pub engine_version: String,
    pub timestamp: u64,
    pub job: JobSpec,
    pub payload: Payload,
}

/// Hex SHA-256 of the canonical JSON of `job`.
pub fn fingerprint(job: &JobSpec) -> String {
    let canonical = serde_json::to_vec(job).expect("job specs serialize");
    let digest = Sha256::digest(&canonical);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit(Box<ResultRecord>),
    Miss,
    /// Present but unusable; the reason goes to stderr.
    Stale(String),
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, fp: &str) -> PathBuf {
        self.dir.join(fp)
    }

    pub fn lookup(&self, fp: &str, version: &str) -> Lookup {
        let Ok(text) = std::fs::read_to_string(self.path(fp)) else {
            return Lookup::Miss;
        };
        match serde_json::from_str::<ResultRecord>(&text) {
            Err(e) => Lookup::Stale(format!("corrupt cache record {fp}: {e}")),
            Ok(r) if r.fingerprint != fp => Lookup::Stale(format!("cache record {fp} names {}", r.fingerprint)),
            Ok(r) if r.engine_version != version => Lookup::Stale(format!(
                "cache record {fp} is from engine {}, not {version}",
                r.engine_version
            )),
            Ok(r) => Lookup::Hit(Box::new(r)),
        }
    }

    pub fn store(&self, record: &ResultRecord) -> Result<()> {
        std::fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let path = self.path(&record.fingerprint);
        let tmp = self.dir.join(format!("{}.tmp", record.fingerprint));
        std::fs::write(&tmp, serde_json::to_vec_pretty(record)?)
            .with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

//! Content-addressed report cache: one JSON file per (verb, canonical input).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::{Report, SCHEMA_VERSION};

pub const CACHE_DIR_ENV: &str = "WORKBENCH_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// SHA-256 of the schema version, the verb and the input serialized
    /// with sorted keys.
    pub fn key(verb: &str, input: &Value) -> String {
        let mut h = Sha256::new();
        h.update(format!("v{SCHEMA_VERSION}\n{verb}\n").as_bytes());
        h.update(serde_json::to_string(input).expect("serializable").as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report, ignoring unreadable or foreign files.
    pub fn load(&self, key: &str) -> Option<Report> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let r: Report = serde_json::from_str(&text).ok()?;
        (r.schema == SCHEMA_VERSION).then_some(r)
    }

    pub fn store(&self, key: &str, report: &Report) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(report).expect("serializable"))?;
        fs::rename(tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn key_ignores_field_order() {
        let a: Value = serde_json::from_str(r#"{"x":1,"y":"s"}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"y":"s","x":1}"#).unwrap();
        assert_eq!(Cache::key("dga-t", &a), Cache::key("dga-t", &b));
        assert_ne!(Cache::key("dga-t", &a), Cache::key("dga-d", &a));
        assert_eq!(Cache::key("v", &json!(null)).len(), 64);
    }
}

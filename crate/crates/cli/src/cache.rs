use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::{Report, SCHEMA};

/// Result cache on disk: one JSON file per content hash.
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    report: Report,
}

/// SHA-256 over length-prefixed parts, as lowercase hex.
pub fn content_key(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Result<Option<Report>, CliError> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::Io { path, detail: e.to_string() }),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| CliError::CacheCorrupt { path: path.clone(), detail: e.to_string() })?;
        if entry.schema != SCHEMA || entry.key != key {
            return Err(CliError::CacheCorrupt { path, detail: "entry does not match its key".into() });
        }
        Ok(Some(entry.report))
    }

    /// Written to a temporary file first and renamed into place.
    pub fn store(&self, key: &str, report: &Report) -> Result<(), CliError> {
        let io = |path: &Path, e: std::io::Error| CliError::Io { path: path.to_path_buf(), detail: e.to_string() };
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let entry = Entry { schema: SCHEMA.into(), key: key.into(), report: report.clone() };
        let text = serde_json::to_string(&entry).expect("reports serialize");
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(|e| io(&tmp, e))?;
        let path = self.path(key);
        fs::rename(&tmp, &path).map_err(|e| io(&path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_separate_parts() {
        assert_ne!(content_key(&[b"ab", b"c"]), content_key(&[b"a", b"bc"]));
        assert_eq!(content_key(&[b"x"]).len(), 64);
    }

    #[test]
    fn round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = content_key(&[b"k"]);
        assert!(cache.load(&key).unwrap().is_none());
        let r = Report::new("cohomology", json!({ "dims": [1, 0] }));
        cache.store(&key, &r).unwrap();
        assert_eq!(cache.load(&key).unwrap(), Some(r));
        let other = content_key(&[b"other"]);
        std::fs::copy(cache.path(&key), cache.path(&other)).unwrap();
        assert!(matches!(cache.load(&other), Err(CliError::CacheCorrupt { .. })));
    }
}

//! Write-once on-disk result cache.
//!
//! Keys are (schema version, n, kind, parameters); a schema bump makes
//! every old entry unreachable. Entries are JSON files written with a
//! temp-file-then-rename so readers never see a partial write. A corrupt
//! entry is treated as a miss with a warning on stderr.

use serde_json::Value;
use std::fs;
use std::path::PathBuf;

pub fn key(schema: u32, n: usize, kind: &str, params: &str) -> String {
    let safe: String = params
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("v{}-n{}-{}-{}", schema, n, kind, safe)
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Explicit directory wins; otherwise $OSPQ_CACHE_DIR; otherwise the
    /// cache is disabled and every get is a miss.
    pub fn open(dir: Option<PathBuf>) -> Self {
        let dir = dir.or_else(|| std::env::var_os("OSPQ_CACHE_DIR").map(PathBuf::from));
        Cache { dir }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key)))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let path = self.path(key)?;
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!(
                    "warning: corrupt cache entry {} ({}), treating as a miss",
                    path.display(),
                    e
                );
                None
            }
        }
    }

    /// Write-once: an existing entry is left untouched.
    pub fn put(&self, key: &str, payload: &Value) {
        let Some(path) = self.path(key) else { return };
        if path.exists() {
            return;
        }
        let Some(dir) = self.dir.as_ref() else { return };
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("warning: cannot create cache dir {}: {}", dir.display(), e);
            return;
        }
        let tmp = dir.join(format!(".{}.{}.tmp", key, std::process::id()));
        let body = serde_json::to_vec_pretty(payload).expect("serializable payload");
        if let Err(e) = fs::write(&tmp, body).and_then(|_| fs::rename(&tmp, &path)) {
            eprintln!("warning: cache write failed for {}: {}", path.display(), e);
            let _ = fs::remove_file(&tmp);
        }
    }
}

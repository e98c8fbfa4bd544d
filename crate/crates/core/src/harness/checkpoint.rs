//! Resumable scan state, written atomically.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::audit::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    /// Hash of the subcommand and the flags that determine its output.
    pub fingerprint: String,
    pub last_completed: u64,
    pub checked: u64,
    #[serde(default)]
    pub value_set: BTreeSet<u64>,
    #[serde(default)]
    pub violations: Vec<Violation>,
    /// Bytes of `--out` already written, for scans that stream to a file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_len: Option<u64>,
}

/// Hex SHA-256 of the canonical command description. Worker count and the
/// checkpoint path are deliberately not part of it.
pub fn fingerprint(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

impl ScanCheckpoint {
    pub fn load(path: &Path) -> io::Result<Option<Self>> {
        match fs::read(path) {
            Ok(bytes) => serde_json::from_slice(&bytes)
                .map(Some)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Write to a sibling temp file, then rename over `path`.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let tmp = temp_path(path);
        let bytes = serde_json::to_vec(self).map_err(io::Error::other)?;
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        assert_eq!(ScanCheckpoint::load(&path).unwrap(), None);
        let c = ScanCheckpoint {
            fingerprint: fingerprint("conj1 0 10"),
            last_completed: 7,
            checked: 8,
            value_set: [0, 1, 2].into_iter().collect(),
            violations: vec![],
            output_len: Some(12),
        };
        c.save(&path).unwrap();
        assert!(!temp_path(&path).exists());
        assert_eq!(ScanCheckpoint::load(&path).unwrap(), Some(c));
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.ckpt");
        fs::write(&path, b"{not json").unwrap();
        assert!(ScanCheckpoint::load(&path).is_err());
    }

    #[test]
    fn fingerprints_differ() {
        assert_ne!(fingerprint("conj1 0 10"), fingerprint("conj1 0 11"));
        assert_eq!(fingerprint("x").len(), 64);
    }
}

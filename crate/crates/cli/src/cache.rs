//! On-disk cache of computed registries.
//!
//! One JSON file per `(family, n, q, engine version)`. The payload is stored
//! as a string together with its SHA-256 so that any corruption is detected
//! before deserializing.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use branchix::branching::{BranchingMatrix, TypeRegistry, ENGINE_VERSION};
use branchix::Family;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheKey {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub engine_version: u32,
}

impl CacheKey {
    pub fn new(family: Family, n: usize, q: u32) -> CacheKey {
        CacheKey {
            family,
            n,
            q,
            engine_version: ENGINE_VERSION,
        }
    }

    pub fn file_name(&self) -> String {
        format!(
            "{}{}_q{}_e{}.json",
            self.family.name(),
            self.n,
            self.q,
            self.engine_version
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    pub registry: TypeRegistry,
    pub matrix: BranchingMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub key: CacheKey,
    /// Serialized [`Payload`].
    pub payload: String,
    /// Hex SHA-256 of `payload`.
    pub checksum: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("malformed cache entry: {0}")]
    Malformed(String),
    #[error("unsupported cache schema version {0}")]
    Schema(u32),
    #[error("cache key mismatch")]
    KeyMismatch,
    #[error("checksum mismatch")]
    Checksum,
    #[error("payload does not match its key")]
    Inconsistent,
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: &Payload) -> CacheEntry {
        let payload = serde_json::to_string(payload).expect("payload serializes");
        CacheEntry {
            schema_version: CACHE_SCHEMA_VERSION,
            key,
            checksum: checksum(&payload),
            payload,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("cache entry serializes")
    }
}

/// Parses and validates an entry for `expected`.
pub fn decode(bytes: &[u8], expected: &CacheKey) -> Result<Payload, CacheError> {
    let entry: CacheEntry = serde_json::from_slice(bytes).map_err(|e| CacheError::Malformed(e.to_string()))?;
    if entry.schema_version != CACHE_SCHEMA_VERSION {
        return Err(CacheError::Schema(entry.schema_version));
    }
    if entry.key != *expected {
        return Err(CacheError::KeyMismatch);
    }
    if checksum(&entry.payload) != entry.checksum {
        return Err(CacheError::Checksum);
    }
    let p: Payload = serde_json::from_str(&entry.payload).map_err(|e| CacheError::Malformed(e.to_string()))?;
    let r = &p.registry;
    if (r.family, r.n, r.q) != (expected.family, expected.n, expected.q) || r.matrix() != p.matrix {
        return Err(CacheError::Inconsistent);
    }
    Ok(p)
}

/// A cache directory.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Outcome of a lookup.
#[derive(Debug)]
pub enum Lookup {
    Hit(Box<Payload>),
    Miss,
    /// An entry existed but failed validation.
    Corrupt(CacheError),
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Lookup {
        match fs::read(self.path(key)) {
            Ok(bytes) => match decode(&bytes, key) {
                Ok(p) => Lookup::Hit(Box::new(p)),
                Err(e) => Lookup::Corrupt(e),
            },
            Err(_) => Lookup::Miss,
        }
    }

    /// Writes atomically via a temporary file in the same directory.
    pub fn store(&self, key: &CacheKey, payload: &Payload) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, CacheEntry::new(*key, payload).encode())?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use branchix::branching::{compute_branching, BranchingOptions};
    use branchix::GroupSpec;

    fn payload(fam: Family, n: usize, q: u32) -> Payload {
        let (registry, matrix) =
            compute_branching(&GroupSpec::new(fam, n, q).unwrap(), &BranchingOptions::default()).unwrap();
        Payload { registry, matrix }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::new(Family::Gt, 3, 3);
        assert!(matches!(cache.load(&key), Lookup::Miss));
        let p = payload(Family::Gt, 3, 3);
        cache.store(&key, &p).unwrap();
        match cache.load(&key) {
            Lookup::Hit(back) => assert_eq!(*back, p),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corruption_is_detected() {
        let key = CacheKey::new(Family::Ut, 3, 3);
        let p = payload(Family::Ut, 3, 3);
        let good = CacheEntry::new(key, &p);

        let mut flipped = good.clone();
        flipped.payload = flipped.payload.replacen("\"q\":3", "\"q\":5", 1);
        assert!(matches!(decode(&flipped.encode(), &key), Err(CacheError::Checksum)));

        let other = CacheKey::new(Family::Ut, 3, 5);
        assert!(matches!(decode(&good.encode(), &other), Err(CacheError::KeyMismatch)));

        let mut bytes = good.encode();
        bytes.truncate(bytes.len() / 2);
        assert!(matches!(decode(&bytes, &key), Err(CacheError::Malformed(_))));

        let mut v: serde_json::Value = serde_json::from_slice(&good.encode()).unwrap();
        v["extra"] = serde_json::json!(true);
        assert!(matches!(
            decode(&serde_json::to_vec(&v).unwrap(), &key),
            Err(CacheError::Malformed(_))
        ));
    }

    #[test]
    fn tampered_matrix_with_valid_checksum_is_rejected() {
        let key = CacheKey::new(Family::Ut, 3, 3);
        let mut p = payload(Family::Ut, 3, 3);
        p.matrix.entries[1][0] += 1;
        let e = CacheEntry::new(key, &p);
        assert!(matches!(decode(&e.encode(), &key), Err(CacheError::Inconsistent)));
    }
}

//! On-disk JSON cache for sampled sequences and character tables.
//!
//! The directory is `$PLETHYSM_CACHE_DIR`, or `./.cache` when unset. Each
//! sequence lives in its own file keyed by `(what, λ, p, k, μ)`; values are
//! merged on write, so sweeps over different `d` ranges share one file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{invalid, Result};
use crate::partitions::Partition;

pub const CACHE_ENV: &str = "PLETHYSM_CACHE_DIR";
const SEQUENCE_FORMAT_VERSION: u32 = 1;

/// Which dilation sequence: `a^{dλ}_{μ,(dk)}` or `c^{dλ}_{p,dk}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum What {
    A,
    C,
}

impl What {
    pub fn tag(self) -> &'static str {
        match self {
            What::A => "a",
            What::C => "c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SequenceKey {
    pub what: What,
    pub lambda: Partition,
    pub p: usize,
    pub k: usize,
    /// Present for `a` sequences only.
    pub mu: Option<Partition>,
}

impl SequenceKey {
    fn file_name(&self) -> String {
        let text = |q: &Partition| if q.is_empty() { "0".to_string() } else { q.to_text().replace(',', "-") };
        let mut name = format!(
            "seq-v{SEQUENCE_FORMAT_VERSION}-{}-l{}-p{}-k{}",
            self.what.tag(),
            text(&self.lambda),
            self.p,
            self.k
        );
        if let Some(mu) = &self.mu {
            name.push_str(&format!("-m{}", text(mu)));
        }
        name.push_str(".json");
        name
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceFile {
    version: u32,
    key: SequenceKey,
    /// `d` (decimal string) → value (decimal string)
    values: BTreeMap<u64, String>,
}

/// Handle on the cache directory; `Cache::disabled()` never touches disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub path: PathBuf,
    pub sequence_files: usize,
    pub character_tables: usize,
    pub cached_values: usize,
    pub bytes: u64,
}

impl Cache {
    /// `$PLETHYSM_CACHE_DIR` or `./.cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".cache"));
        Cache { dir: Some(dir) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn path(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Cached values of a sequence (possibly empty).
    pub fn load_sequence(&self, key: &SequenceKey) -> Result<BTreeMap<u64, BigUint>> {
        let Some(dir) = &self.dir else { return Ok(BTreeMap::new()) };
        let path = dir.join(key.file_name());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        let file: SequenceFile = serde_json::from_str(&text)?;
        if file.version != SEQUENCE_FORMAT_VERSION || &file.key != key {
            return Err(invalid(format!("cache file {} does not match its key", path.display())));
        }
        file.values
            .into_iter()
            .map(|(d, v)| {
                let v: BigUint = v.parse().map_err(|e| invalid(format!("bad cached value {v:?}: {e}")))?;
                Ok((d, v))
            })
            .collect()
    }

    /// Merges `values` into the stored sequence.
    pub fn store_sequence(&self, key: &SequenceKey, values: &BTreeMap<u64, BigUint>) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        if values.is_empty() {
            return Ok(());
        }
        let mut merged = self.load_sequence(key)?;
        merged.extend(values.iter().map(|(d, v)| (*d, v.clone())));
        fs::create_dir_all(dir)?;
        let file = SequenceFile {
            version: SEQUENCE_FORMAT_VERSION,
            key: key.clone(),
            values: merged.into_iter().map(|(d, v)| (d, v.to_string())).collect(),
        };
        // write then rename so a concurrent reader never sees a torn file
        let path = dir.join(key.file_name());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&file)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// The character table of `S_p`, from disk when present.
    pub fn character_table(&self, p: usize) -> Result<CharacterTable> {
        match &self.dir {
            Some(dir) => CharacterTable::load_or_compute(dir, p),
            None => Ok(CharacterTable::compute(p)),
        }
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let path = self.dir.clone().unwrap_or_default();
        let mut stats =
            CacheStats { path: path.clone(), sequence_files: 0, character_tables: 0, cached_values: 0, bytes: 0 };
        let Ok(entries) = fs::read_dir(&path) else { return Ok(stats) };
        for entry in entries {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if !name.ends_with(".json") {
                continue;
            }
            stats.bytes += entry.metadata()?.len();
            if name.starts_with("seq-") {
                stats.sequence_files += 1;
                if let Ok(file) = serde_json::from_str::<SequenceFile>(&fs::read_to_string(entry.path())?) {
                    stats.cached_values += file.values.len();
                }
            } else if name.starts_with("characters-") {
                stats.character_tables += 1;
            }
        }
        Ok(stats)
    }

    /// Removes every cache file this crate writes; other files are left alone.
    pub fn clear(&self) -> Result<usize> {
        let Some(dir) = &self.dir else { return Ok(0) };
        let Ok(entries) = fs::read_dir(dir) else { return Ok(0) };
        let mut removed = 0;
        for entry in entries {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if (name.starts_with("seq-") || name.starts_with("characters-")) && name.contains(".json") {
                fs::remove_file(entry.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    fn key() -> SequenceKey {
        SequenceKey { what: What::A, lambda: partition![3, 2, 1], p: 3, k: 2, mu: Some(partition![2, 1]) }
    }

    #[test]
    fn round_trip_and_merge() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        assert!(cache.load_sequence(&key()).unwrap().is_empty());
        let first: BTreeMap<u64, BigUint> =
            [(0, 0u32), (1, 1)].into_iter().map(|(d, v)| (d, BigUint::from(v))).collect();
        cache.store_sequence(&key(), &first).unwrap();
        let second: BTreeMap<u64, BigUint> = [(2, 2u32)].into_iter().map(|(d, v)| (d, BigUint::from(v))).collect();
        cache.store_sequence(&key(), &second).unwrap();
        let loaded = cache.load_sequence(&key()).unwrap();
        assert_eq!(loaded.len(), 3);
        assert_eq!(loaded[&2], BigUint::from(2u32));
        cache.character_table(3).unwrap();
        let stats = cache.stats().unwrap();
        assert_eq!((stats.sequence_files, stats.character_tables, stats.cached_values), (1, 1, 3));
        assert_eq!(cache.clear().unwrap(), 2);
        assert!(cache.load_sequence(&key()).unwrap().is_empty());
    }

    #[test]
    fn distinct_keys_use_distinct_files() {
        let mut other = key();
        other.mu = Some(partition![1, 1, 1]);
        assert_ne!(key().file_name(), other.file_name());
        assert_eq!(key().file_name(), "seq-v1-a-l3-2-1-p3-k2-m2-1.json");
    }

    #[test]
    fn disabled_cache_is_inert() {
        let cache = Cache::disabled();
        let values: BTreeMap<u64, BigUint> = [(0, BigUint::from(1u32))].into_iter().collect();
        cache.store_sequence(&key(), &values).unwrap();
        assert!(cache.load_sequence(&key()).unwrap().is_empty());
        assert_eq!(cache.clear().unwrap(), 0);
    }
}

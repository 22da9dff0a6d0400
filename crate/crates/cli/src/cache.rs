//! On-disk store for structure constants, one JSON file per Cartan type.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use descent_core::cartan::CartanType;
use descent_core::{BuildOptions, CoxeterSystem, DescentAlgebra, StructureConstants};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "DESCENT_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub type_label: String,
    pub group_order: u64,
    pub rank: usize,
    /// `(I, J, K, |X_IJK|)` with subsets as bitmasks; zero entries omitted.
    pub triples: Vec<(u32, u32, u32, u64)>,
    /// Members of each shape class, as bitmasks.
    pub shapes: Vec<Vec<u32>>,
    pub checksum: u64,
}

impl CacheEntry {
    pub fn from_algebra(a: &DescentAlgebra) -> Self {
        let w = a.system();
        let mut entry = CacheEntry {
            schema_version: SCHEMA_VERSION,
            type_label: w.label().to_string(),
            group_order: w.order() as u64,
            rank: w.rank(),
            triples: a.constants().triples().collect(),
            shapes: a.shapes().classes().iter().map(|c| c.members.iter().map(|m| m.bits()).collect()).collect(),
            checksum: 0,
        };
        entry.checksum = entry.compute_checksum();
        entry
    }

    /// First 8 bytes (little endian) of SHA-256 over every field except the checksum.
    pub fn compute_checksum(&self) -> u64 {
        let mut h = Sha256::new();
        h.update(self.schema_version.to_le_bytes());
        h.update((self.type_label.len() as u64).to_le_bytes());
        h.update(self.type_label.as_bytes());
        h.update(self.group_order.to_le_bytes());
        h.update((self.rank as u64).to_le_bytes());
        h.update((self.triples.len() as u64).to_le_bytes());
        for &(i, j, k, c) in &self.triples {
            h.update(i.to_le_bytes());
            h.update(j.to_le_bytes());
            h.update(k.to_le_bytes());
            h.update(c.to_le_bytes());
        }
        h.update((self.shapes.len() as u64).to_le_bytes());
        for class in &self.shapes {
            h.update((class.len() as u64).to_le_bytes());
            for m in class {
                h.update(m.to_le_bytes());
            }
        }
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
    }

    pub fn checksum_ok(&self) -> bool {
        self.checksum == self.compute_checksum()
    }

    pub fn constants(&self) -> descent_core::Result<StructureConstants> {
        StructureConstants::from_triples(self.rank, self.triples.iter().copied())
    }
}

/// What happened when an algebra was requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    /// Nothing usable on disk; computed and written.
    Stored,
    /// Entry failed validation; recomputed and rewritten.
    Corrupt(String),
    VersionMismatch { found: u32 },
    Disabled,
}

impl CacheStatus {
    pub fn warning(&self, label: &str) -> Option<String> {
        match self {
            CacheStatus::Corrupt(why) => Some(format!("cache entry for {label} is corrupt ({why}); recomputed")),
            CacheStatus::VersionMismatch { found } => Some(format!(
                "cache entry for {label} has schema version {found}, expected {SCHEMA_VERSION}; recomputed"
            )),
            _ => None,
        }
    }
}

/// Outcome of reading one cache file.
#[derive(Debug)]
pub enum Lookup {
    Missing,
    Found(CacheEntry),
    Corrupt(String),
    VersionMismatch { found: u32 },
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `$DESCENT_CACHE_DIR`, falling back to `descent-cache` under the system temp dir.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d),
            _ => Cache::new(std::env::temp_dir().join("descent-cache")),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, label: &str) -> Option<PathBuf> {
        let name: String = label.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        self.dir.as_ref().map(|d| d.join(format!("{name}.json")))
    }

    pub fn load(&self, label: &str) -> Lookup {
        let Some(path) = self.path_for(label) else { return Lookup::Missing };
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Missing,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let value: serde_json::Value = match serde_json::from_slice(&bytes) {
            Ok(v) => v,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Lookup::VersionMismatch { found: v as u32 },
            None => return Lookup::Corrupt("missing schema_version".into()),
        }
        let entry: CacheEntry = match serde_json::from_value(value) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        if entry.type_label != label {
            return Lookup::Corrupt(format!("entry is for {}", entry.type_label));
        }
        if !entry.checksum_ok() {
            return Lookup::Corrupt("checksum mismatch".into());
        }
        Lookup::Found(entry)
    }

    /// Writes to a temporary sibling and renames it into place.
    pub fn store(&self, entry: &CacheEntry) -> Result<()> {
        let Some(path) = self.path_for(&entry.type_label) else { return Ok(()) };
        let dir = path.parent().expect("cache files live in a directory");
        fs::create_dir_all(dir)?;
        static NEXT: AtomicU64 = AtomicU64::new(0);
        let tag = format!("{}.{}", std::process::id(), NEXT.fetch_add(1, Ordering::Relaxed));
        let tmp = dir.join(format!(".{}.{tag}.tmp", path.file_name().unwrap().to_string_lossy()));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, entry)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Builds the algebra for `system`, reusing validated constants from disk.
    pub fn algebra(&self, system: CoxeterSystem) -> Result<(Arc<DescentAlgebra>, CacheStatus)> {
        let system = Arc::new(system);
        if self.dir.is_none() {
            return Ok((DescentAlgebra::from_shared(system), CacheStatus::Disabled));
        }
        let label = system.label().to_string();
        let fallback = match self.load(&label) {
            Lookup::Found(entry) => match restore(Arc::clone(&system), &entry) {
                Ok(a) => return Ok((a, CacheStatus::Hit)),
                Err(why) => CacheStatus::Corrupt(why),
            },
            Lookup::Missing => CacheStatus::Stored,
            Lookup::Corrupt(why) => CacheStatus::Corrupt(why),
            Lookup::VersionMismatch { found } => CacheStatus::VersionMismatch { found },
        };
        let a = DescentAlgebra::from_shared(system);
        self.store(&CacheEntry::from_algebra(&a))?;
        Ok((a, fallback))
    }
}

fn restore(system: Arc<CoxeterSystem>, entry: &CacheEntry) -> std::result::Result<Arc<DescentAlgebra>, String> {
    if entry.group_order != system.order() as u64 || entry.rank != system.rank() {
        return Err(format!("entry describes a group of order {} and rank {}", entry.group_order, entry.rank));
    }
    let constants = entry.constants().map_err(|e| e.to_string())?;
    let a = DescentAlgebra::with_constants(system, constants).map_err(|e| e.to_string())?;
    let shapes: Vec<Vec<u32>> =
        a.shapes().classes().iter().map(|c| c.members.iter().map(|m| m.bits()).collect()).collect();
    if shapes != entry.shapes {
        return Err("shape classes disagree with the group".into());
    }
    Ok(a)
}

/// Rough bytes needed to enumerate a group of this type and tabulate its constants.
pub fn estimated_footprint(cartan: &CartanType) -> u128 {
    let rank = cartan.rank() as u128;
    let per_element = 4 * (3 * rank + 6) + 2 * rank * 4;
    cartan.order() * per_element + (1u128 << (3 * rank)) * 8
}

/// Canonical label, options and cache in one place; algebras are memoised per label.
pub struct Loader {
    cache: Cache,
    allow_rank7: bool,
    built: Mutex<HashMap<String, Arc<DescentAlgebra>>>,
    statuses: Mutex<Vec<(String, CacheStatus)>>,
}

impl Loader {
    pub fn new(cache: Cache, allow_rank7: bool) -> Self {
        Loader { cache, allow_rank7, built: Mutex::default(), statuses: Mutex::default() }
    }

    pub fn cache(&self) -> &Cache {
        &self.cache
    }

    pub fn canonical_label(label: &str) -> Result<String> {
        Ok(label.trim().parse::<CartanType>()?.to_string())
    }

    pub fn system(&self, label: &str) -> Result<CoxeterSystem> {
        let cartan: CartanType = label.trim().parse()?;
        if cartan.rank() == 7 && !self.allow_rank7 {
            return Err(CliError::Rank7Disabled { label: cartan.to_string() });
        }
        if cartan.rank() == 7 {
            let mib = estimated_footprint(&cartan) / (1 << 20);
            eprintln!("note: building {cartan} (|W| = {}), estimated memory ~{mib} MiB", cartan.order());
        }
        Ok(CoxeterSystem::from_label_with(&cartan.to_string(), BuildOptions { rank_cap: 7 })?)
    }

    pub fn algebra(&self, label: &str) -> Result<Arc<DescentAlgebra>> {
        let key = Self::canonical_label(label)?;
        if let Some(a) = self.built.lock().unwrap().get(&key) {
            return Ok(Arc::clone(a));
        }
        let (a, status) = self.cache.algebra(self.system(&key)?)?;
        if let Some(w) = status.warning(&key) {
            eprintln!("warning: {w}");
        }
        self.statuses.lock().unwrap().push((key.clone(), status));
        self.built.lock().unwrap().insert(key, Arc::clone(&a));
        Ok(a)
    }

    /// Cache outcomes in request order.
    pub fn statuses(&self) -> Vec<(String, CacheStatus)> {
        self.statuses.lock().unwrap().clone()
    }
}

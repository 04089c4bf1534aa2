//! On-disk cache of chamber enumerations, one JSON file per group.
//!
//! Only the diagram of each chamber is stored; everything else is rebuilt
//! from it, so a cache hit yields the same `Group` as a cold enumeration.
//! Files are written to a temporary name and renamed into place, so readers
//! never observe a partial file and concurrent writers are harmless.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use ktypes_core::rootsys::build_root_system;
use ktypes_core::vogan::{enumerate_chambers, Chamber, VoganDiagram};
use ktypes_core::{Group, GroupSpec, SimpleBasis, Weight};
use serde::{Deserialize, Serialize};

use crate::SCHEMA_VERSION;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "KTYPES_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    group: String,
    chambers: Vec<CachedChamber>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CachedChamber {
    word: Vec<usize>,
    painted: Vec<bool>,
    simples: Vec<Weight>,
}

#[derive(Debug, Clone)]
pub struct ChamberCache {
    dir: PathBuf,
}

impl ChamberCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ChamberCache { dir: dir.into() }
    }

    /// `$XDG_CACHE_HOME/ktypes`, else `$HOME/.cache/ktypes`.
    pub fn default_dir() -> Option<PathBuf> {
        std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))
            .map(|d| d.join("ktypes"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: &GroupSpec) -> PathBuf {
        let key: String = spec
            .label()
            .chars()
            .map(|c| match c {
                '*' => 's',
                c if c.is_ascii_alphanumeric() => c,
                _ => '_',
            })
            .collect();
        self.dir.join(format!("chambers-{key}.json"))
    }

    /// Cached chambers, or `None` when the file is missing, stale or unreadable.
    pub fn load(&self, spec: &GroupSpec) -> Option<Vec<Chamber>> {
        let text = fs::read_to_string(self.path_for(spec)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.schema_version != SCHEMA_VERSION || file.group != spec.label() {
            return None;
        }
        let all = build_root_system(*spec).ok()?.all_roots();
        file.chambers
            .into_iter()
            .map(|c| {
                let diagram =
                    VoganDiagram::new(SimpleBasis::new(c.simples).ok()?, c.painted).ok()?;
                Chamber::from_diagram(diagram, c.word, &all).ok()
            })
            .collect()
    }

    pub fn store(&self, spec: &GroupSpec, chambers: &[Chamber]) -> anyhow::Result<()> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            group: spec.label(),
            chambers: chambers
                .iter()
                .map(|c| CachedChamber {
                    word: c.word.clone(),
                    painted: c.diagram.painted.clone(),
                    simples: c.simples().to_vec(),
                })
                .collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &file)?;
        tmp.flush()?;
        tmp.persist(self.path_for(spec))
            .map_err(|e| e.error)
            .context("renaming cache file into place")?;
        Ok(())
    }
}

/// Resolves `spec`, reading and filling the cache when one is given.
pub fn load_group(spec: GroupSpec, cache: Option<&ChamberCache>) -> anyhow::Result<Group> {
    spec.validate()?;
    if !spec.is_equal_rank() {
        return Ok(Group::new(spec)?);
    }
    if let Some(cache) = cache {
        if let Some(chambers) = cache.load(&spec) {
            return Ok(Group::from_chambers(spec, chambers)?);
        }
        let chambers = enumerate_chambers(&spec)?;
        // A read-only cache directory only costs the speed-up.
        let _ = cache.store(&spec, &chambers);
        return Ok(Group::from_chambers(spec, chambers)?);
    }
    Ok(Group::new(spec)?)
}

//! Content-addressed store of per-monoid classification results.
//!
//! One file per work item, named by the SHA-256 of the tool version, the
//! search configuration and the additive monoid. Files are written to a
//! temporary sibling and renamed into place, so an interrupted run never
//! leaves a truncated entry behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use gamma_forge_core::canonical::canonical_form;
use gamma_forge_core::io::{from_json_line, to_json_line};
use gamma_forge_core::{AdditiveTable, ClassEntry, SearchConfig, SearchStats};
use serde::{Deserialize, Serialize};

use crate::manifest::sha256_hex;
use crate::TOOL_VERSION;

#[derive(Serialize, Deserialize)]
struct StoredClass {
    class_size: u64,
    structure: String,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    classes: Vec<StoredClass>,
    stats: SearchStats,
}

/// Key of one work item: the monoid's table and everything that shapes the
/// search except the worker count and budget, which do not change results.
pub fn cache_key(cfg: &SearchConfig, monoid_index: usize, add: &AdditiveTable) -> String {
    let mut text = format!(
        "gamma-forge cache v1\nversion={TOOL_VERSION}\nn={}\ng={}\nmode={}\nmonoid={monoid_index}\nadd=",
        cfg.n,
        cfg.g,
        cfg.mode.name()
    );
    text.push_str(&hex::encode(add.as_slice()));
    sha256_hex(text.as_bytes())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `explicit`, else `$GAMMA_FORGE_CACHE`, else `~/.cache/gamma-forge`.
    pub fn locate(explicit: Option<&Path>) -> Option<Cache> {
        let dir = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os("GAMMA_FORGE_CACHE").map(PathBuf::from))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("gamma-forge")))?;
        Some(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored result, or `None` on a miss or an unreadable entry.
    pub fn load(&self, key: &str) -> Option<(Vec<ClassEntry>, SearchStats)> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.key != key {
            return None;
        }
        let mut classes = Vec::with_capacity(entry.classes.len());
        for c in entry.classes {
            let representative = from_json_line(&c.structure, 1).ok()?;
            classes.push(ClassEntry {
                form: canonical_form(&representative),
                representative,
                class_size: c.class_size,
            });
        }
        Some((classes, entry.stats))
    }

    pub fn store(&self, key: &str, classes: &[ClassEntry], stats: &SearchStats) -> anyhow::Result<()> {
        std::fs::create_dir_all(&self.dir).with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let entry = Entry {
            key: key.to_string(),
            classes: classes
                .iter()
                .map(|c| StoredClass {
                    class_size: c.class_size,
                    structure: to_json_line(&c.representative),
                })
                .collect(),
            stats: stats.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key))?;
        Ok(())
    }
}

/// Results compare equal when classes match exactly and the counters agree;
/// wall time is not compared.
pub fn same_result(a: &(Vec<ClassEntry>, SearchStats), b: &(Vec<ClassEntry>, SearchStats)) -> bool {
    a.0 == b.0
        && a.1.extension_steps == b.1.extension_steps
        && a.1.pruned == b.1.pruned
        && a.1.valid_found == b.1.valid_found
}

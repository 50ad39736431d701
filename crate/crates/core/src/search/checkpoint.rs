use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PruningStats;
use crate::error::{Error, Result};
use crate::pgroup::GroupSpec;

pub const CHECKPOINT_VERSION: u32 = 1;

/// A class found so far: canonical table plus bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub identity: usize,
    pub is_local: bool,
    pub is_zero_symmetric: bool,
    pub l_order: Option<usize>,
    pub tables: u64,
    pub canon: Vec<u8>,
}

/// Resumable search position.
///
/// `unit` is the next work unit; when `path` is non-empty that unit is
/// partially explored and `path[d]` is the next candidate to try at depth
/// `d` (the candidate in progress at a shallower depth is `path[d] - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub group: GroupSpec,
    pub config: String,
    pub unit: usize,
    pub path: Vec<u32>,
    pub stats: PruningStats,
    pub candidates_found: u64,
    pub local_count: u64,
    pub classes: Vec<ClassRecord>,
}

impl Checkpoint {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let tmp = path.as_ref().with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(self)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let cp: Checkpoint = serde_json::from_slice(&fs::read(path)?)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "version {} is not supported (expected {CHECKPOINT_VERSION})",
                cp.version
            )));
        }
        Ok(cp)
    }

    pub(crate) fn check_matches(&self, group: &GroupSpec, config: &str) -> Result<()> {
        if &self.group != group {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for group `{}`, not `{}`",
                self.group.name, group.name
            )));
        }
        if self.config != config {
            return Err(Error::Checkpoint(format!(
                "checkpoint settings `{}` differ from `{config}`",
                self.config
            )));
        }
        Ok(())
    }
}

//! Group families, fixed-group records and the alternating-group degree
//! formulas, loaded from a data directory.

mod family;
mod partition;
mod record;

pub use family::{
    format_point, CodEntry, CodValue, Derived, FamilyPoint, GridSpec, GroupFamily, Identification, Identity, OuterSpec,
    PointNote,
};
pub use partition::{
    alternating_certificate, hook_degree, partition_formulas, AlternatingCertificate, DistinctnessCertificate,
    HookMismatch, PartitionFormula, HOOK_CHECK, N_START,
};
pub use record::GroupRecord;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::arith::ArithError;
use crate::perm::{PermError, PermGroup};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0}")]
    Io(String),
    #[error("{file}: {reason}")]
    Parse { file: String, reason: String },
    #[error("{name}: {reason}")]
    Validation { name: String, reason: String },
    #[error("{family} at {point}: {reason}")]
    Point { family: String, point: String, reason: String },
    #[error("partition formulas: {0}")]
    Partition(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Everything under a data directory: `records/`, `families/`, `groups/`.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub root: PathBuf,
    pub records: BTreeMap<String, GroupRecord>,
    pub families: BTreeMap<String, GroupFamily>,
    pub groups: BTreeMap<String, PermGroup>,
}

fn toml_files(dir: &Path) -> Result<Vec<PathBuf>, CatalogError> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let entries = std::fs::read_dir(dir).map_err(|e| CatalogError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

impl Catalog {
    pub fn load(root: &Path) -> Result<Self, CatalogError> {
        if !root.is_dir() {
            return Err(CatalogError::Io(format!("data directory {} not found", root.display())));
        }
        let mut cat = Catalog { root: root.to_path_buf(), ..Default::default() };
        for path in toml_files(&root.join("records"))? {
            let r = GroupRecord::load(&path)?;
            let name = r.name().to_string();
            if cat.records.insert(name.clone(), r).is_some() {
                return Err(CatalogError::Validation { name, reason: "duplicate record".into() });
            }
        }
        for path in toml_files(&root.join("families"))? {
            let f = GroupFamily::load(&path)?;
            let name = f.name.clone();
            if cat.families.insert(name.clone(), f).is_some() {
                return Err(CatalogError::Validation { name, reason: "duplicate family".into() });
            }
        }
        for path in toml_files(&root.join("groups"))? {
            let g = PermGroup::load(&path)?;
            cat.groups.insert(g.name.clone(), g);
        }
        Ok(cat)
    }

    pub fn record(&self, name: &str) -> Result<&GroupRecord, CatalogError> {
        self.records.get(name).ok_or_else(|| CatalogError::Unknown { kind: "record", name: name.to_string() })
    }

    pub fn family(&self, name: &str) -> Result<&GroupFamily, CatalogError> {
        self.families.get(name).ok_or_else(|| CatalogError::Unknown { kind: "family", name: name.to_string() })
    }

    pub fn group(&self, name: &str) -> Result<&PermGroup, CatalogError> {
        self.groups.get(name).ok_or_else(|| CatalogError::Unknown { kind: "group", name: name.to_string() })
    }

    pub fn records_tagged<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a GroupRecord> + 'a {
        self.records.values().filter(move |r| r.has_tag(tag))
    }
}

//! On-disk caches of Bethe roots and structure constants.
//!
//! Layout: `<dir>/<n>_<k>/bethe_N<order>.json` and `<dir>/<n>_<k>/structure.json`.
//! Every write goes to a temporary file in the target directory which is then
//! renamed over the destination, so readers never see a partial document.

use qkt::bethe::{insert_root, solve_bae, BetheError, BetheRoot};
use qkt::combinatorics::BoxPartition;
use qkt::json::{
    bethe_cache_from_json, bethe_cache_to_json, structure_table_from_json, structure_table_to_json, JsonError,
};
use qkt::products::{insert_structure_table, structure_table, ProductError, StructureTable};
use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("corrupt cache file {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error(transparent)]
    Bethe(#[from] BetheError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

fn corrupt(path: &Path, reason: impl ToString) -> CacheError {
    CacheError::Corrupt { path: path.to_path_buf(), reason: reason.to_string() }
}

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CacheError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
    tmp.write_all(contents.as_bytes()).map_err(io(path))?;
    tmp.as_file().sync_all().map_err(io(path))?;
    tmp.persist(path).map_err(|e| CacheError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}

/// A cache rooted at one directory.
#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn dir(&self, k: usize, n: usize) -> PathBuf {
        self.root.join(format!("{n}_{k}"))
    }

    pub fn bethe_path(&self, k: usize, n: usize, order: usize) -> PathBuf {
        self.dir(k, n).join(format!("bethe_N{order}.json"))
    }

    pub fn structure_path(&self, k: usize, n: usize) -> PathBuf {
        self.dir(k, n).join("structure.json")
    }

    fn read_json(path: &Path) -> Result<Option<Value>, CacheError> {
        match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).map(Some).map_err(|e| corrupt(path, e)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io(path)(e)),
        }
    }

    /// The cached primal roots of `Gr(k,n)` at the given order, if present.
    pub fn load_bethe(&self, k: usize, n: usize, order: usize) -> Result<Option<Vec<BetheRoot>>, CacheError> {
        let path = self.bethe_path(k, n, order);
        let Some(v) = Self::read_json(&path)? else {
            return Ok(None);
        };
        let roots = bethe_cache_from_json(&v, k, n, order).map_err(|e: JsonError| corrupt(&path, e))?;
        if roots.len() != BoxPartition::all(k, n).len() {
            return Err(corrupt(&path, "document does not cover every fixed point"));
        }
        Ok(Some(roots))
    }

    pub fn store_bethe(&self, k: usize, n: usize, order: usize, roots: &[BetheRoot]) -> Result<PathBuf, CacheError> {
        let path = self.bethe_path(k, n, order);
        let doc = bethe_cache_to_json(k, n, order, roots);
        write_atomic(&path, &serde_json::to_string(&doc).expect("JSON values always serialize"))?;
        Ok(path)
    }

    /// Loads the roots of `Gr(k,n)` from disk, or solves and stores them.
    /// Either way the in-memory root cache is seeded.
    pub fn bethe_roots(&self, k: usize, n: usize, order: usize) -> Result<Vec<BetheRoot>, CacheError> {
        if let Some(roots) = self.load_bethe(k, n, order)? {
            for r in &roots {
                insert_root(r.clone());
            }
            return Ok(roots);
        }
        let roots = BoxPartition::all(k, n)
            .iter()
            .map(|lam| solve_bae(lam, order).map(|r| (*r).clone()))
            .collect::<Result<Vec<_>, _>>()?;
        self.store_bethe(k, n, order, &roots)?;
        Ok(roots)
    }

    pub fn load_structure(&self, k: usize, n: usize) -> Result<Option<StructureTable>, CacheError> {
        let path = self.structure_path(k, n);
        let Some(v) = Self::read_json(&path)? else {
            return Ok(None);
        };
        let table = structure_table_from_json(&v, k, n).map_err(|e| corrupt(&path, e))?;
        if table.len() != BoxPartition::all(k, n).len().pow(2) {
            return Err(corrupt(&path, "document does not cover every pair of partitions"));
        }
        Ok(Some(table))
    }

    pub fn store_structure(&self, k: usize, n: usize, table: &StructureTable) -> Result<PathBuf, CacheError> {
        let path = self.structure_path(k, n);
        let doc = structure_table_to_json(k, n, table);
        write_atomic(&path, &serde_json::to_string(&doc).expect("JSON values always serialize"))?;
        Ok(path)
    }

    /// Loads the structure constants of `Gr(k,n)` or computes and stores them,
    /// seeding the in-memory table.
    pub fn structure(&self, k: usize, n: usize) -> Result<StructureTable, CacheError> {
        if let Some(t) = self.load_structure(k, n)? {
            insert_structure_table(k, n, t.clone());
            return Ok(t);
        }
        let t = (*structure_table(k, n)?).clone();
        self.store_structure(k, n, &t)?;
        Ok(t)
    }
}

//! On-disk cache of KL tables, character tables and chromatic batches.
//!
//! Each file is a JSON envelope `{format, kind, version, payload}`. Files with
//! another format tag or version are ignored and later overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::character::{CharacterTable, CharacterTableJson};
use crate::csf::{CsfBatch, CsfBatchJson, CSF_BATCH_VERSION};
use crate::error::{Error, Result};
use crate::kl::{KlTable, KlTableJson, KL_TABLE_VERSION};

pub const CACHE_FORMAT: &str = "hecke-lab-cache";
pub const DEFAULT_CACHE_DIR: &str = ".hecke-lab-cache";
pub const CHARACTER_TABLE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    kind: String,
    version: u32,
    payload: T,
}

// Just the header, so stale payloads are never parsed.
#[derive(Deserialize)]
struct Header {
    format: String,
    kind: String,
    version: u32,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: &str, n: usize) -> PathBuf {
        self.dir.join(format!("{kind}-n{n}.json"))
    }

    /// `Ok(None)` when the file is missing or stale.
    fn read<T: DeserializeOwned>(&self, kind: &str, n: usize, version: u32) -> Result<Option<T>> {
        let path = self.path(kind, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let header: Header =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if header.format != CACHE_FORMAT || header.kind != kind || header.version != version {
            return Ok(None);
        }
        let env: Envelope<T> =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(Some(env.payload))
    }

    fn write<T: Serialize>(&self, kind: &str, n: usize, version: u32, payload: T) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let env = Envelope { format: CACHE_FORMAT.to_string(), kind: kind.to_string(), version, payload };
        let path = self.path(kind, n);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&env)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn load_kl(&self, n: usize) -> Result<Option<KlTable>> {
        self.read::<KlTableJson>("kl", n, KL_TABLE_VERSION)?.map(KlTable::from_json).transpose()
    }

    pub fn store_kl(&self, table: &KlTable) -> Result<()> {
        self.write("kl", table.n(), KL_TABLE_VERSION, table.to_json())
    }

    pub fn load_csf(&self, n: usize) -> Result<Option<CsfBatch>> {
        self.read::<CsfBatchJson>("csf", n, CSF_BATCH_VERSION)?.map(CsfBatch::from_json).transpose()
    }

    pub fn store_csf(&self, batch: &CsfBatch) -> Result<()> {
        self.write("csf", batch.n(), CSF_BATCH_VERSION, batch.to_json())
    }

    pub fn load_characters(&self, n: usize) -> Result<Option<CharacterTable>> {
        self.read::<CharacterTableJson>("chi", n, CHARACTER_TABLE_VERSION)?
            .map(CharacterTable::from_json)
            .transpose()
    }

    pub fn store_characters(&self, table: &CharacterTable) -> Result<()> {
        self.write("chi", table.n(), CHARACTER_TABLE_VERSION, table.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("hecke-lab-cache-test-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn kl_round_trip_and_stale_versions() {
        let dir = scratch("kl");
        let cache = Cache::new(&dir);
        assert!(cache.load_kl(4).unwrap().is_none());
        let mut kl = KlTable::new(4);
        kl.column(&"4231".parse::<Permutation>().unwrap()).unwrap();
        cache.store_kl(&kl).unwrap();
        let back = cache.load_kl(4).unwrap().unwrap();
        assert_eq!(back.entries(), kl.entries());

        let stale = r#"{"format":"hecke-lab-cache","kind":"kl","version":999,"payload":null}"#;
        fs::write(dir.join("kl-n4.json"), stale).unwrap();
        assert!(cache.load_kl(4).unwrap().is_none());
        fs::write(dir.join("kl-n4.json"), "not json").unwrap();
        assert!(matches!(cache.load_kl(4), Err(Error::Cache(_))));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn csf_and_character_round_trip() {
        let dir = scratch("csf");
        let cache = Cache::new(&dir);
        let batch = CsfBatch::compute(4);
        cache.store_csf(&batch).unwrap();
        assert_eq!(cache.load_csf(4).unwrap().unwrap().entries(), batch.entries());
        let table = crate::character::character_table(3).unwrap();
        cache.store_characters(&table).unwrap();
        let back = cache.load_characters(3).unwrap().unwrap();
        assert_eq!(back.to_json().values, table.to_json().values);
        fs::remove_dir_all(&dir).unwrap();
    }
}

//! Content-addressed store for computed characters.
//!
//! Entries are JSON files named by the SHA-256 of the job key. Each entry
//! carries the schema version, the key it was written under and a hash of
//! its `q^0` slice; anything that fails those checks is treated as a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use affine_gch::serial::{CharacterDoc, SCHEMA_VERSION};
use affine_gch::GradedCharacter;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    key: String,
    q0_hash: String,
    character: CharacterDoc,
}

pub enum Lookup {
    Hit(GradedCharacter),
    Miss,
    /// Present but unusable; the reason is for the warning.
    Invalid(String),
}

pub struct Cache {
    dir: PathBuf,
}

fn sha(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn q0_hash(doc: &CharacterDoc) -> String {
    sha(serde_json::to_string(&doc.bottom_slice()).expect("serializable").as_bytes())
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha(key.as_bytes())))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path_for(key);
        let Ok(text) = fs::read_to_string(&path) else { return Lookup::Miss };
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Invalid(format!("{}: unreadable entry ({e})", path.display())),
        };
        if entry.schema_version != SCHEMA_VERSION || entry.character.schema_version != SCHEMA_VERSION {
            return Lookup::Invalid(format!("{}: schema version {}", path.display(), entry.schema_version));
        }
        if entry.key != key {
            return Lookup::Invalid(format!("{}: written for a different job", path.display()));
        }
        if q0_hash(&entry.character) != entry.q0_hash {
            return Lookup::Invalid(format!("{}: q^0 self-check failed", path.display()));
        }
        match entry.character.to_character() {
            Ok(f) => Lookup::Hit(f),
            Err(e) => Lookup::Invalid(format!("{}: {e}", path.display())),
        }
    }

    /// Write through a temporary file in the same directory, then rename.
    pub fn put(&self, key: &str, doc: &CharacterDoc) -> std::io::Result<()> {
        let entry = Entry {
            schema_version: SCHEMA_VERSION,
            key: key.to_string(),
            q0_hash: q0_hash(doc),
            character: doc.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry).expect("serializable").as_bytes())?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

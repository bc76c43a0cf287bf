//! Versioned, inspectable checkpoints: one text file per completed element plus a
//! JSON manifest carrying a fingerprint of the run and a hash of every file.

use super::RunError;
use crate::arith::Laurent;
use crate::coxeter::{Elem, ElementTable};
use crate::intersection::{Column, EntryProvenance};
use crate::main_alg::{element_from_text, element_to_text, ElementData};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub const VERSION: &str = "pcanon-checkpoint-1";
const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub element: String,
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub fingerprint: String,
    pub entries: Vec<Entry>,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

pub struct Checkpoint {
    dir: PathBuf,
    manifest: Manifest,
}

impl Checkpoint {
    /// Opens `dir`, creating it if needed. An empty directory gives a fresh state.
    pub fn open(dir: &Path, fingerprint: &str) -> Result<Self, RunError> {
        fs::create_dir_all(dir)?;
        let path = dir.join(MANIFEST);
        let manifest = if path.exists() {
            let m: Manifest = serde_json::from_str(&fs::read_to_string(&path)?)
                .map_err(|e| RunError::CorruptCheckpoint(format!("manifest: {e}")))?;
            if m.version != VERSION {
                return Err(RunError::VersionMismatch(m.version));
            }
            if m.fingerprint != fingerprint {
                return Err(RunError::Config(format!(
                    "checkpoint in {} belongs to a different run",
                    dir.display()
                )));
            }
            m
        } else {
            Manifest {
                version: VERSION.to_string(),
                fingerprint: fingerprint.to_string(),
                entries: Vec::new(),
            }
        };
        Ok(Checkpoint {
            dir: dir.to_path_buf(),
            manifest,
        })
    }

    pub fn len(&self) -> usize {
        self.manifest.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.manifest.entries.is_empty()
    }

    fn write_manifest(&self) -> Result<(), RunError> {
        let tmp = self.dir.join(format!("{MANIFEST}.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(&self.manifest)?)?;
        fs::rename(tmp, self.dir.join(MANIFEST))?;
        Ok(())
    }

    fn save_text(&mut self, element: String, text: String) -> Result<(), RunError> {
        let file = format!("{element}.txt");
        fs::write(self.dir.join(&file), &text)?;
        self.manifest.entries.retain(|e| e.element != element);
        self.manifest.entries.push(Entry {
            element,
            file,
            sha256: sha256_hex(text.as_bytes()),
        });
        self.write_manifest()
    }

    fn texts(&self) -> Result<Vec<(String, String)>, RunError> {
        let mut out = Vec::new();
        for e in &self.manifest.entries {
            let text = fs::read_to_string(self.dir.join(&e.file))
                .map_err(|err| RunError::CorruptCheckpoint(format!("{}: {err}", e.file)))?;
            if sha256_hex(text.as_bytes()) != e.sha256 {
                return Err(RunError::CorruptCheckpoint(format!("hash mismatch in {}", e.file)));
            }
            out.push((e.element.clone(), text));
        }
        Ok(out)
    }

    pub fn save_element(&mut self, table: &ElementTable, d: &ElementData) -> Result<(), RunError> {
        self.save_text(table.word_string(d.w), element_to_text(table, d))
    }

    pub fn load_elements(&self, table: &ElementTable) -> Result<Vec<ElementData>, RunError> {
        self.texts()?
            .into_iter()
            .map(|(name, text)| {
                element_from_text(table, &text).ok_or_else(|| RunError::CorruptCheckpoint(format!("cannot parse {name}")))
            })
            .collect()
    }

    pub fn save_column(&mut self, table: &ElementTable, w: Elem, col: &Column) -> Result<(), RunError> {
        let mut text = format!("@column {}\n", table.word_string(w));
        for (x, (c, p)) in col {
            text.push_str(&format!("{} {} {}\n", table.word_string(*x), c.to_pairs(), p));
        }
        self.save_text(table.word_string(w), text)
    }

    pub fn load_columns(&self, table: &ElementTable) -> Result<Vec<(Elem, Column)>, RunError> {
        let mut out = Vec::new();
        for (name, text) in self.texts()? {
            let corrupt = || RunError::CorruptCheckpoint(format!("cannot parse {name}"));
            let mut lines = text.lines();
            let w = lines
                .next()
                .and_then(|l| l.strip_prefix("@column "))
                .and_then(|l| table.parse_word(l))
                .ok_or_else(corrupt)?;
            let mut col = Column::new();
            for l in lines {
                let f: Vec<&str> = l.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(corrupt());
                }
                let x = table.parse_word(f[0]).ok_or_else(corrupt)?;
                let c = Laurent::parse_pairs(f[1]).ok_or_else(corrupt)?;
                let p = EntryProvenance::parse(f[2]).ok_or_else(corrupt)?;
                col.insert(x, (c, p));
            }
            out.push((w, col));
        }
        Ok(out)
    }
}

//! Append-only JSON-lines store for search records.
//!
//! Layout: the first line is a header object naming the format and version,
//! every following line is one serialized [`SearchRecord`](crate::search::SearchRecord),
//! UTF-8, newline-terminated. Appends are deduplicated by instance hash so a
//! re-run of the same search extends the file with new instances only.
//!
//! The store is strict on read: a malformed line, a bad header, or a missing
//! trailing newline is an error rather than a silent skip, because downstream
//! consumers treat the file as ground truth for what has been searched.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::SearchRecord;

pub const LEDGER_FORMAT: &str = "minicover-ledger";
pub const LEDGER_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

/// Open handle on a ledger file. All mutation goes through [`Ledger::append`],
/// which writes one line per record and never rewrites existing bytes.
#[derive(Debug)]
pub struct Ledger {
    path: PathBuf,
    file: File,
    hashes: HashSet<String>,
    records: Vec<SearchRecord>,
}

impl Ledger {
    /// Open an existing ledger, validating every line, or create a fresh one
    /// (header only) if the file is absent or empty.
    pub fn open_or_create<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let fresh = match std::fs::metadata(&path) {
            Ok(meta) => meta.len() == 0,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => true,
            Err(e) => return Err(Error::Io(e)),
        };

        let mut hashes = HashSet::new();
        let mut records = Vec::new();

        if fresh {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&path)?;
            let header = Header {
                format: LEDGER_FORMAT.to_string(),
                version: LEDGER_VERSION,
            };
            writeln!(file, "{}", serde_json::to_string(&header).expect("header serializes"))?;
            file.flush()?;
            return Ok(Ledger { path, file, hashes, records });
        }

        let content = std::fs::read_to_string(&path)?;
        if !content.ends_with('\n') {
            let last = content.lines().count();
            return Err(Error::LedgerFormat {
                line: last,
                message: "file does not end with a newline; refusing to append onto a partial line".into(),
            });
        }
        for (idx, line) in content.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                return Err(Error::LedgerFormat {
                    line: lineno,
                    message: "blank line".into(),
                });
            }
            if lineno == 1 {
                let header: Header = serde_json::from_str(line).map_err(|e| Error::LedgerFormat {
                    line: lineno,
                    message: format!("bad header: {e}"),
                })?;
                if header.format != LEDGER_FORMAT {
                    return Err(Error::LedgerFormat {
                        line: lineno,
                        message: format!("unknown format {:?}", header.format),
                    });
                }
                if header.version != LEDGER_VERSION {
                    return Err(Error::LedgerFormat {
                        line: lineno,
                        message: format!(
                            "version {} not supported (expected {LEDGER_VERSION})",
                            header.version
                        ),
                    });
                }
                continue;
            }
            let record: SearchRecord = serde_json::from_str(line).map_err(|e| Error::LedgerFormat {
                line: lineno,
                message: e.to_string(),
            })?;
            hashes.insert(record.instance_hash.clone());
            records.push(record);
        }

        let file = OpenOptions::new().append(true).open(&path)?;
        Ok(Ledger { path, file, hashes, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Append one record unless its instance hash is already present.
    /// Returns whether a line was actually written.
    pub fn append(&mut self, record: &SearchRecord) -> Result<bool> {
        if self.hashes.contains(&record.instance_hash) {
            return Ok(false);
        }
        let line = serde_json::to_string(record)
            .map_err(|e| Error::internal(format!("record serialization failed: {e}")))?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        self.hashes.insert(record.instance_hash.clone());
        self.records.push(record.clone());
        Ok(true)
    }

    pub fn contains(&self, instance_hash: &str) -> bool {
        self.hashes.contains(instance_hash)
    }

    /// Records currently in the ledger, file order (oldest first).
    pub fn records(&self) -> &[SearchRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

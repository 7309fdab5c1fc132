use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{HarnessError, TrialRecord};

/// One JSON object per line, in the given order.
pub fn to_ndjson(records: &[TrialRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("plain data"));
        out.push('\n');
    }
    out
}

/// Append-only NDJSON file shared between writers.
pub struct ResultsStore {
    path: PathBuf,
    writer: Mutex<BufWriter<File>>,
}

fn io_error(path: &Path, e: std::io::Error) -> HarnessError {
    HarnessError::Io(format!("{}: {e}", path.display()))
}

impl ResultsStore {
    /// Creates or truncates the file.
    pub fn create(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref().to_path_buf();
        let file = File::create(&path).map_err(|e| io_error(&path, e))?;
        Ok(Self { writer: Mutex::new(BufWriter::new(file)), path })
    }

    pub fn open_append(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref().to_path_buf();
        let file = OpenOptions::new().create(true).append(true).open(&path).map_err(|e| io_error(&path, e))?;
        Ok(Self { writer: Mutex::new(BufWriter::new(file)), path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Writes the records as one contiguous block and flushes.
    pub fn append(&self, records: &[TrialRecord]) -> Result<(), HarnessError> {
        let text = to_ndjson(records);
        let mut w = self.writer.lock().unwrap_or_else(|p| p.into_inner());
        w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|e| io_error(&self.path, e))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>, HarnessError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display()))))
            .collect()
    }
}

//! File writers shared by the subcommands.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use trendlab_core::{ArrivalEvent, ArrivalKind, SizeHistogram};

use crate::error::{HarnessError, HarnessResult};

pub fn ensure_dir(dir: &Path) -> HarnessResult<()> {
    fs::create_dir_all(dir).map_err(HarnessError::io(dir))
}

pub fn histogram_path(dir: &Path, replication: u64) -> PathBuf {
    dir.join(format!("rep_{replication:03}.hist.tsv"))
}

pub fn events_path(dir: &Path, replication: u64) -> PathBuf {
    dir.join(format!("rep_{replication:03}.events.jsonl"))
}

pub fn summary_path(dir: &Path) -> PathBuf {
    dir.join("summary.json")
}

pub fn write_histogram(path: &Path, hist: &SizeHistogram, headers: &[(&str, String)]) -> HarnessResult<()> {
    fs::write(path, hist.to_table(headers)).map_err(HarnessError::io(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> HarnessResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("summary serializes");
    text.push('\n');
    fs::write(path, text).map_err(HarnessError::io(path))
}

/// One line of the event log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct EventRecord {
    pub t: u64,
    pub kind: ArrivalKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub new_node: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree: Option<u32>,
}

impl From<&ArrivalEvent> for EventRecord {
    fn from(e: &ArrivalEvent) -> Self {
        EventRecord {
            t: e.time,
            kind: e.kind,
            new_node: e.new_node.map(|n| n.0),
            source: e.source.map(|n| n.0),
            target: e.target.map(|n| n.0),
            tree: e.tree.map(|t| t.0),
        }
    }
}

/// Streams events as JSON lines, preceded by `#` header lines.
pub struct EventWriter {
    path: PathBuf,
    out: BufWriter<File>,
    failed: Option<std::io::Error>,
}

impl EventWriter {
    pub fn create(path: PathBuf, headers: &[(&str, String)]) -> HarnessResult<Self> {
        let file = File::create(&path).map_err(HarnessError::io(&path))?;
        let mut out = BufWriter::new(file);
        for (k, v) in headers {
            writeln!(out, "# {k}: {v}").map_err(HarnessError::io(&path))?;
        }
        Ok(EventWriter { path, out, failed: None })
    }

    pub fn record(&mut self, event: &ArrivalEvent) {
        if self.failed.is_some() {
            return;
        }
        let line = serde_json::to_string(&EventRecord::from(event)).expect("event serializes");
        if let Err(e) = writeln!(self.out, "{line}") {
            self.failed = Some(e);
        }
    }

    pub fn finish(mut self) -> HarnessResult<()> {
        if let Some(e) = self.failed.take() {
            return Err(HarnessError::Io { path: self.path, source: e });
        }
        self.out.flush().map_err(HarnessError::io(&self.path))
    }
}

//! In-memory run artifacts, committed to disk only after the run succeeds.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// Files of one run plus the machine-readable summary.
#[derive(Debug, Default)]
pub struct Artifacts {
    files: Vec<(PathBuf, String)>,
    pub max_deviations: BTreeMap<String, f64>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Artifacts {
    pub fn add(&mut self, rel: impl Into<PathBuf>, contents: String) {
        self.files.push((rel.into(), contents));
    }

    pub fn files(&self) -> impl Iterator<Item = (&Path, &str)> {
        self.files.iter().map(|(p, c)| (p.as_path(), c.as_str()))
    }

    /// Records `value` under `key` (keeping the largest) and a failure if it exceeds `tolerance`.
    pub fn deviation(&mut self, key: &str, value: f64, tolerance: f64) {
        let slot = self.max_deviations.entry(key.to_string()).or_insert(0.0);
        *slot = slot.max(value);
        if !(value <= tolerance) {
            self.failures.push(format!("{key}: {value:e} exceeds {tolerance:e}"));
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Serialize)]
struct Summary<'a, P: Serialize> {
    command: &'a str,
    parameters: &'a P,
    passed: bool,
    max_deviations: &'a BTreeMap<String, f64>,
    failures: &'a [String],
    notes: &'a [String],
    files: Vec<String>,
}

pub fn summary_json<P: Serialize>(command: &str, parameters: &P, a: &Artifacts) -> String {
    let s = Summary {
        command,
        parameters,
        passed: a.passed(),
        max_deviations: &a.max_deviations,
        failures: &a.failures,
        notes: &a.notes,
        files: a.files().map(|(p, _)| p.display().to_string()).collect(),
    };
    let mut out = serde_json::to_string_pretty(&s).expect("summary serializes");
    out.push('\n');
    out
}

/// Writes via a sibling temp file and rename so readers never see partial files.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

pub fn commit(dir: &Path, artifacts: &Artifacts, summary: &str) -> io::Result<()> {
    for (rel, contents) in artifacts.files() {
        write_atomic(&dir.join(rel), contents)?;
    }
    write_atomic(&dir.join("summary.json"), summary)
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use circlemm::ExactMatrix;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(source: impl Into<String>, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        InputDigest { source: source.into(), sha256: hash.iter().map(|b| format!("{b:02x}")).collect() }
    }
}

/// Row-major with explicit row and column labels.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixRecord {
    pub name: String,
    pub field: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixRecord {
    pub fn of(name: &str, m: &ExactMatrix) -> Self {
        MatrixRecord {
            name: name.to_string(),
            field: m.field().to_string(),
            row_labels: m.row_labels().to_vec(),
            col_labels: m.col_labels().to_vec(),
            rows: m.entries_display(),
        }
    }

    fn render(&self, out: &mut String) {
        let lw = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        let cw = self
            .rows
            .iter()
            .flatten()
            .chain(&self.col_labels)
            .map(String::len)
            .max()
            .unwrap_or(1);
        writeln!(out, "{} over {}:", self.name, self.field).unwrap();
        let head: Vec<String> = self.col_labels.iter().map(|c| format!("{c:>cw$}")).collect();
        writeln!(out, "  {:lw$}  {}", "", head.join(" ")).unwrap();
        for (l, r) in self.row_labels.iter().zip(&self.rows) {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>cw$}")).collect();
            writeln!(out, "  {l:<lw$}  {}", cells.join(" ")).unwrap();
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdicts: BTreeMap<String, Value>,
    pub matrices: Vec<MatrixRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: BTreeMap::new(),
            matrices: Vec::new(),
            warnings: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn matrix(&mut self, name: &str, m: &ExactMatrix) {
        self.matrices.push(MatrixRecord::of(name, m));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for i in &self.inputs {
            writeln!(out, "  input {} sha256:{}", i.source, i.sha256).unwrap();
        }
        for (k, v) in &self.verdicts {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for m in &self.matrices {
            m.render(&mut out);
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                writeln!(out, "time {k}: {v:.1} ms").unwrap();
            }
        }
        out
    }
}

/// Named phase timings; disabled timers record nothing.
pub struct Timer {
    enabled: bool,
    phases: BTreeMap<String, f64>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer { enabled, phases: BTreeMap::new() }
    }

    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.phases.entry(phase.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }

    pub fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timings_ms = Some(self.phases);
        }
    }
}

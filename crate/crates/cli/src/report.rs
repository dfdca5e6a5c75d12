//! The report document shared by every command, and its renderings.

use serde::Serialize;
use serde_json::{Map, Value};

/// Exit status contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Ok,
    ToolFailure,
    Erratum,
    FallToCenter,
    Usage,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ToolFailure => 1,
            Status::Erratum => 2,
            Status::FallToCenter => 3,
            Status::Usage => 64,
        }
    }

    /// The more severe of two outcomes.
    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultEntry {
    pub id: String,
    pub verdict: String,
    pub data: Value,
}

impl ResultEntry {
    pub fn new(id: impl Into<String>, verdict: impl Into<String>, data: Value) -> ResultEntry {
        ResultEntry { id: id.into(), verdict: verdict.into(), data }
    }
}

/// One ledger entry: a printed form, what the engine found and the evidence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErratumEntry {
    pub key: String,
    pub subject: String,
    pub printed: String,
    pub finding: String,
    /// `confirmed` when the printed form fails the machine check, `not-reproduced` otherwise.
    pub status: String,
    pub evidence: Value,
    /// Path of the evidence file relative to the output directory.
    pub artifact: String,
}

impl ErratumEntry {
    pub fn confirmed(&self) -> bool {
        self.status == "confirmed"
    }

    pub fn artifact_path(key: &str) -> String {
        format!("errata/{}.json", key.replace('/', "_"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub run: Value,
    pub results: Vec<ResultEntry>,
    pub errata: Vec<ErratumEntry>,
}

impl Document {
    pub fn new(run: Value) -> Document {
        Document { run, results: Vec::new(), errata: Vec::new() }
    }

    pub fn merge(&mut self, other: Document) {
        self.results.extend(other.results);
        for e in other.errata {
            if !self.errata.iter().any(|x| x.key == e.key) {
                self.errata.push(e);
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{:<9} {}", r.verdict, r.id));
            if let Some(note) = r.data.get("note").and_then(Value::as_str) {
                out.push_str(&format!("  ({note})"));
            }
            out.push('\n');
        }
        if !self.errata.is_empty() {
            out.push_str("\nerrata:\n");
            for e in &self.errata {
                out.push_str(&format!("  [{}] {}: {}\n", e.status, e.key, e.finding));
            }
        }
        out
    }
}

/// Builds a JSON object from key/value pairs, keeping only present values.
pub fn object<I, K>(pairs: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    let mut m = Map::new();
    for (k, v) in pairs {
        if !v.is_null() {
            m.insert(k.into(), v);
        }
    }
    Value::Object(m)
}

/// Rendered output plus side files for the output directory.
#[derive(Clone, Debug)]
pub struct Output {
    pub document: Document,
    /// Present for commands that have a tabular rendering.
    pub csv: Option<String>,
    pub status: Status,
    /// `(relative path, contents)` written under `--out`.
    pub files: Vec<(String, String)>,
    /// Diagnostic for standard error.
    pub diagnostic: Option<String>,
}

impl Output {
    pub fn new(document: Document, status: Status) -> Output {
        Output { document, csv: None, status, files: Vec::new(), diagnostic: None }
    }

    /// Evidence files for every ledger entry.
    pub fn attach_evidence(&mut self) {
        for e in &self.document.errata {
            let body = serde_json::to_string_pretty(&e.evidence).expect("evidence serializes") + "\n";
            self.files.push((e.artifact.clone(), body));
        }
    }
}

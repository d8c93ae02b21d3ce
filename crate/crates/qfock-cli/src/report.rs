//! Report buffering and the line schemas.
//!
//! Commands append records; each record renders as one JSON value per line
//! in machine mode or one aligned text line in human mode. The whole report
//! is buffered and flushed at the end, so identical configurations produce
//! byte-identical output regardless of internal parallelism.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Json,
    Human,
}

pub struct Report {
    style: Style,
    buf: String,
}

impl Report {
    pub fn new(style: Style) -> Self {
        Report { style, buf: String::new() }
    }

    /// Appends one record: the JSON value in machine mode, the text line in
    /// human mode.
    pub fn record<T: Serialize>(&mut self, value: &T, human: impl AsRef<str>) {
        match self.style {
            Style::Json => {
                let line = serde_json::to_string(value).expect("report types serialize");
                self.buf.push_str(&line);
            }
            Style::Human => self.buf.push_str(human.as_ref()),
        }
        self.buf.push('\n');
    }

    /// Appends a line in human mode only (section headers, summaries).
    pub fn note(&mut self, line: impl AsRef<str>) {
        if self.style == Style::Human {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    pub fn flush(self, out: Option<&Path>) -> io::Result<()> {
        match out {
            Some(path) => fs::write(path, self.buf),
            None => io::stdout().write_all(self.buf.as_bytes()),
        }
    }
}

// ---------------------------------------------------------------------
// Line schemas, one struct per record kind.
// ---------------------------------------------------------------------

#[derive(Serialize)]
pub struct DatumLine {
    pub family: String,
    pub rank: usize,
    pub coxeter: u32,
    pub positive_roots: usize,
    pub det: String,
    pub det_label: String,
    pub closed_matches: bool,
}

#[derive(Serialize)]
pub struct DetCheckLine {
    pub k: u32,
    pub value: String,
    pub zero: bool,
}

#[derive(Serialize)]
pub struct ScanLine {
    pub l: u32,
    pub coprime: bool,
    pub det_checks: Vec<DetCheckLine>,
}

#[derive(Serialize)]
pub struct TermLine {
    pub state: String,
    pub coeff: String,
    pub energy: i64,
    pub weight: Vec<i64>,
}

#[derive(Serialize)]
pub struct TermCountLine {
    pub terms: usize,
}

#[derive(Serialize)]
pub struct ErrorLine {
    pub error: String,
}

#[derive(Serialize)]
pub struct WeightLine {
    pub eta: Vec<i64>,
    pub energy: u32,
    pub mult: u64,
}

#[derive(Serialize)]
pub struct TotalsLine {
    pub totals: Vec<u64>,
}

#[derive(Serialize)]
pub struct CaseLine {
    pub suite: &'static str,
    pub case: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
}

impl CaseLine {
    pub fn new(suite: &'static str, case: String, pass: bool) -> Self {
        CaseLine {
            suite,
            case,
            status: if pass { "pass" } else { "fail" },
            residual_terms: None,
        }
    }

    pub fn human(&self) -> String {
        match self.residual_terms {
            Some(n) => format!("{:4}  {} {}  ({n} failing cases)", self.status, self.suite, self.case),
            None => format!("{:4}  {} {}", self.status, self.suite, self.case),
        }
    }
}

#[derive(Serialize)]
pub struct IrreducibleLine {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    pub l: u32,
    pub depth: u32,
    pub kernel_dims: Vec<usize>,
    pub singular_found: bool,
    pub det_checks: Vec<DetCheckLine>,
}

#[derive(Serialize)]
pub struct SingularLine {
    pub eta: Vec<i64>,
    pub energy: u32,
}

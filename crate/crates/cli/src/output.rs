//! JSON envelope and CSV tables.
//!
//! Every JSON document has the shape
//! `{"schema_version", "command", "pass", "checks": [CheckReport], "data"}`.
//! CSV output is a single table whose columns depend on the command and are
//! listed in the README.

use crate::CliError;
use chiral_lab::CheckReport;
use clap::ValueEnum;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

pub const CHECK_COLUMNS: [&str; 5] = ["name", "pass", "measured", "tolerance", "anchor"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown format `{s}`")))
    }
}

/// Result of one command before rendering.
pub struct Outcome {
    pub command: &'static str,
    pub checks: Vec<CheckReport>,
    pub data: serde_json::Value,
    /// Header and rows of the CSV rendering.
    pub table: Table,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn of_checks(checks: &[CheckReport]) -> Self {
        let mut t = Table::new(&CHECK_COLUMNS);
        for c in checks {
            t.push(check_row(c));
        }
        t
    }
}

pub fn check_row(c: &CheckReport) -> Vec<String> {
    vec![c.name.clone(), c.pass.to_string(), c.measured.to_string(), c.tolerance.to_string(), c.anchor.clone()]
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    pass: bool,
    checks: &'a [CheckReport],
    data: &'a serde_json::Value,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    pass: self.pass(),
                    checks: &self.checks,
                    data: &self.data,
                };
                let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                w.write_record(&self.table.header).map_err(io)?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

//! Named pass/fail records shared by every check in the crate.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Measured value of a check: either a number or a short description
/// (e.g. the first mismatching coefficient of an exact comparison).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measured {
    Number(f64),
    Text(String),
}

impl From<f64> for Measured {
    fn from(v: f64) -> Self {
        Measured::Number(v)
    }
}

impl From<String> for Measured {
    fn from(v: String) -> Self {
        Measured::Text(v)
    }
}

impl From<&str> for Measured {
    fn from(v: &str) -> Self {
        Measured::Text(v.to_owned())
    }
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measured::Number(v) => write!(f, "{v:e}"),
            Measured::Text(s) => f.write_str(s),
        }
    }
}

/// One verified statement. `tolerance` is `0.0` for exact checks.
/// `anchor` names the identity or bound being checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub measured: Measured,
    pub tolerance: f64,
    pub anchor: String,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        pass: bool,
        measured: impl Into<Measured>,
        tolerance: f64,
        anchor: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            pass,
            measured: measured.into(),
            tolerance,
            anchor: anchor.into(),
        }
    }

    /// Exact check: passes iff `mismatch` is `None`.
    pub fn exact(name: impl Into<String>, mismatch: Option<String>, anchor: impl Into<String>) -> Self {
        let pass = mismatch.is_none();
        let measured = mismatch.unwrap_or_else(|| "exact".to_owned());
        Self::new(name, pass, measured, 0.0, anchor)
    }

    /// Passes iff `value < tolerance`.
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64, anchor: impl Into<String>) -> Self {
        Self::new(name, value < tolerance, value, tolerance, anchor)
    }

    /// Passes iff `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64, anchor: impl Into<String>) -> Self {
        Self::new(name, value > threshold, value, threshold, anchor)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: measured {} (tol {:e}) -- {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance,
            self.anchor
        )
    }
}

/// True iff every report passed.
pub fn all_pass<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> bool {
    reports.into_iter().all(|r| r.pass)
}

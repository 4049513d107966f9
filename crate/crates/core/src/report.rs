//! Pass/fail reports shared by the verification suites and the CLI.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, expected: impl Into<String>, actual: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    /// Passes when both sides render identically.
    pub fn compare(id: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Check {
        let (e, a) = (expected.to_string(), actual.to_string());
        Check::new(id, e == a, e, a)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> SuiteReport {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        SuiteReport { suite: suite.into(), checks, summary }
    }

    /// Concatenates several reports under one suite name.
    pub fn merge(suite: impl Into<String>, parts: Vec<SuiteReport>) -> SuiteReport {
        SuiteReport::new(suite, parts.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One line per check, then a summary line. With `failures_only`,
    /// passing checks are left out.
    pub fn to_text(&self, failures_only: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if failures_only && c.passed() {
                continue;
            }
            let _ = write!(out, "{} {}", c.status, c.id);
            if c.passed() {
                let _ = writeln!(out, ": {}", c.actual);
            } else {
                let _ = writeln!(out, ": expected {}, got {}", c.expected, c.actual);
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "{}: {} checks, {} passed, {} failed", self.suite, s.total, s.passed, s.failed);
        out
    }
}

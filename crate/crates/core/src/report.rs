//! Pass/fail reports produced by the structural verifiers.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// An ordered list of named checks about one object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl StructureReport {
    pub fn new(subject: impl Into<String>) -> Self {
        StructureReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records the check and returns whether it passed.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.push(name, passed, detail);
        passed
    }

    pub fn extend(&mut self, other: StructureReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", c.name)?;
            } else {
                writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

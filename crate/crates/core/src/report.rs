use serde::{Deserialize, Serialize};

use crate::diffpoly::DiffPoly;

/// One verified identity; `residual` is `lhs - rhs` and must be zero to pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub label: String,
    pub passed: bool,
    pub residual: DiffPoly,
}

/// Pass/fail report of a verification run. Failures are reported, not thrown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            entries: Vec::new(),
        }
    }

    /// Records `residual == 0`.
    pub fn push_residual(&mut self, label: impl Into<String>, residual: DiffPoly) {
        self.entries.push(CheckEntry {
            label: label.into(),
            passed: residual.is_zero(),
            residual,
        });
    }

    pub fn push_eq(&mut self, label: impl Into<String>, lhs: &DiffPoly, rhs: &DiffPoly) {
        self.push_residual(label, lhs - rhs);
    }

    /// Records a boolean outcome that has no polynomial residual.
    pub fn push_flag(&mut self, label: impl Into<String>, passed: bool) {
        self.entries.push(CheckEntry {
            label: label.into(),
            passed,
            residual: DiffPoly::zero(),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        let prefix = other.check;
        self.entries.extend(other.entries.into_iter().map(|mut e| {
            e.label = format!("{prefix}: {}", e.label);
            e
        }));
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> + '_ {
        self.entries.iter().filter(|e| !e.passed)
    }
}

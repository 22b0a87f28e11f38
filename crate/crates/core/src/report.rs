//! Pass/fail reports for named verification predicates.

use serde::Serialize;

/// Outcome of one named check: a measured deviation against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
    pub tolerance: f64,
    /// Offending entries or extra context; empty when the check passes.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            passed: deviation <= tolerance,
            deviation,
            tolerance,
            details: Vec::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.details.push(detail.into());
        self
    }

    /// A check that is a plain predicate rather than a measured deviation.
    pub fn predicate(name: impl Into<String>, passed: bool) -> Self {
        CheckReport {
            name: name.into(),
            passed,
            deviation: if passed { 0.0 } else { f64::INFINITY },
            tolerance: 0.0,
            details: Vec::new(),
        }
    }
}

/// A bundle of checks, pass iff all members pass.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

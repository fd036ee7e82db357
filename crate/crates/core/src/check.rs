//! Pass/fail reports for verification operations.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Counterexample or diagnostic detail, empty when none.
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.outcomes.push(CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `name` as failed at the first failing probe, passed otherwise.
    pub fn record_all<I, F>(&mut self, name: &str, probes: I, mut check: F)
    where
        I: IntoIterator,
        F: FnMut(I::Item) -> Option<String>,
    {
        for probe in probes {
            if let Some(detail) = check(probe) {
                self.record(name, false, detail);
                return;
            }
        }
        self.record(name, true, "");
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.outcomes.extend(other.outcomes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            if o.detail.is_empty() {
                writeln!(f, "{status} {}", o.name)?;
            } else {
                writeln!(f, "{status} {}: {}", o.name, o.detail)?;
            }
        }
        Ok(())
    }
}

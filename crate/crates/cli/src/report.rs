//! Run reports: checks keyed by name, rendered in sorted order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use riesz_lab::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "EXPECTED-FAIL-demonstration",
        }
    }
}

/// One check aggregated over every instance it ran on.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub status: Status,
    pub instances: usize,
    pub failures: usize,
    /// Witness of the first failing instance, or the demonstration detail.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub max_omega: usize,
    pub spec: String,
    pub notes: Vec<String>,
    pub checks: BTreeMap<String, CheckSummary>,
}

impl RunReport {
    pub fn new(suite: &str, seed: u64, cases: usize, max_omega: usize, spec: String) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            cases,
            max_omega,
            spec,
            notes: Vec::new(),
            checks: BTreeMap::new(),
        }
    }

    /// Records one instance of `name`; `instance` labels it in witnesses.
    pub fn record(&mut self, name: &str, instance: &str, outcome: Result<(), String>) {
        let entry = self.checks.entry(name.to_string()).or_insert(CheckSummary {
            status: Status::Pass,
            instances: 0,
            failures: 0,
            detail: None,
        });
        entry.instances += 1;
        if let Err(detail) = outcome {
            entry.failures += 1;
            if entry.status != Status::Fail {
                entry.status = Status::Fail;
                entry.detail = Some(format!("{instance}: {detail}"));
            }
        }
    }

    pub fn expected_fail(&mut self, name: &str, detail: String) {
        self.checks.insert(
            name.to_string(),
            CheckSummary {
                status: Status::ExpectedFail,
                instances: 1,
                failures: 0,
                detail: Some(detail),
            },
        );
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.values().filter(|c| c.status == status).count()
    }

    pub fn unexpected_failures(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# riesz-lab check report");
        let _ = writeln!(out, "suite {}", self.suite);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "cases {}", self.cases);
        let _ = writeln!(out, "max-omega {}", self.max_omega);
        let _ = writeln!(out, "spec {}", self.spec);
        for note in &self.notes {
            let _ = writeln!(out, "note {note}");
        }
        for (name, c) in &self.checks {
            let _ = write!(out, "{} {} instances={}", c.status.label(), name, c.instances);
            if c.status == Status::Fail {
                let _ = write!(out, " failures={}", c.failures);
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, " :: {d}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary checks={} passed={} failed={} expected-fail={}",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::ExpectedFail)
        );
        out
    }
}

/// Library errors with point, block and atom indices shifted to 1-based.
pub fn describe_error(e: &Error) -> String {
    match e {
        Error::NonPositiveWeight { point } => format!("weight of point {} must be strictly positive", point + 1),
        Error::NegativeWeight { point } => format!("weight of point {} is negative", point + 1),
        Error::NotBlockConstant { block } => format!("vector is not block-constant on block {}", block + 1),
        Error::NegativeBase { point } => format!("fractional power of a negative entry at point {}", point + 1),
        Error::NotDominated { point } => {
            format!("vector is not dominated by any multiple of the bound (point {})", point + 1)
        }
        Error::NotPositive { point } => format!("expected a positive vector (negative at point {})", point + 1),
        Error::NotHomogeneous { atom } => format!("functional is not R(T)-homogeneous (witness atom {})", atom + 1),
        other => other.to_string(),
    }
}

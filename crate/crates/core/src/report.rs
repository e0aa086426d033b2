//! Named checks and JSON verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Passed on a finite witness sample of an infinite basis.
    SampleVerified,
}

/// How much of the quantified domain a check covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Sample(String),
}

impl Scope {
    fn pass_status(&self) -> Status {
        match self {
            Scope::Exhaustive => Status::Pass,
            Scope::Sample(_) => Status::SampleVerified,
        }
    }

    fn note(&self) -> Option<String> {
        match self {
            Scope::Exhaustive => None,
            Scope::Sample(s) => Some(s.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_us: Option<u64>,
}

impl Check {
    /// Runs `f`; `Err(witness)` marks a failure with its counterexample.
    pub fn run(
        name: &str,
        anchor: &str,
        scope: &Scope,
        f: impl FnOnce() -> Result<(), String>,
    ) -> Check {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed().as_micros() as u64;
        let (status, witness) = match outcome {
            Ok(()) => (scope.pass_status(), None),
            Err(w) => (Status::Fail, Some(w)),
        };
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
            scope: scope.note(),
            elapsed_us: Some(elapsed),
        }
    }

    /// A check whose outcome is a plain boolean.
    pub fn of_bool(name: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) -> Check {
        Check::run(name, anchor, &Scope::Exhaustive, || if ok { Ok(()) } else { Err(witness()) })
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Finds the first failing item of a grid.
pub fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut test: impl FnMut(&T) -> Result<(), String>,
) -> Result<(), String> {
    for it in items {
        test(&it)?;
    }
    Ok(())
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub checks: Vec<Check>,
    /// Computed quantities worth recording (dimensions, verdicts, values).
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub values: BTreeMap<String, String>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Section {
        Section { title: title.into(), checks: Vec::new(), values: BTreeMap::new() }
    }

    pub fn with_checks(title: impl Into<String>, checks: Vec<Check>) -> Section {
        Section { checks, ..Section::new(title) }
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.to_string(), v.to_string());
    }

    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub sample_verified: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub instance: String,
    pub fingerprint: String,
    pub field: String,
    pub command: String,
    pub sections: Vec<Section>,
    pub summary: Summary,
    /// The process exit code this report maps to.
    #[serde(default)]
    pub exit_code: i32,
}

impl Report {
    pub fn new(instance: &str, fingerprint: &str, field: &str, command: &str, sections: Vec<Section>) -> Report {
        let checks = sections.iter().flat_map(|s| &s.checks);
        let mut summary = Summary { total: 0, passed: 0, sample_verified: 0, failed: 0 };
        for c in checks {
            summary.total += 1;
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::SampleVerified => summary.sample_verified += 1,
                Status::Fail => summary.failed += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            instance: instance.to_string(),
            fingerprint: fingerprint.to_string(),
            field: field.to_string(),
            command: command.to_string(),
            sections,
            summary,
            exit_code: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// A copy with every timing field removed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for s in &mut r.sections {
            for c in &mut s.checks {
                c.elapsed_us = None;
            }
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.sections.iter().flat_map(|s| &s.checks).filter(|c| !c.passed()).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.sections.iter().flat_map(|s| &s.checks).find(|c| c.name == name)
    }
}

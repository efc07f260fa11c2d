//! Named pass/fail checks with optional witnesses.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, true, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, false, Some(witness.into()));
    }

    /// Appends another report, prefixing its check names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}.{}", c.name),
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn is_pass(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

//! Pass/fail records shared by the verification suites.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn check(&mut self, name: &str, subject: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), subject: subject.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Number of checks with the given name.
    pub fn count(&self, name: &str) -> usize {
        self.checks.iter().filter(|c| c.name == name).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {}/{} passed\n", self.title, self.checks.len() - self.failures().len(), self.checks.len());
        for c in &self.checks {
            out += &format!("  [{}] {} {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.subject, c.detail);
        }
        out
    }
}

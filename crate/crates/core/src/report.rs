use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub key: String,
    pub status: Status,
    pub detail: String,
}

/// An ordered list of named checks. Failing checks never abort the report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { key: key.into(), status, detail: detail.into() });
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(key, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            let key = if prefix.is_empty() { c.key } else { format!("{prefix}: {}", c.key) };
            self.checks.push(Check { key, ..c });
        }
    }

    /// No FAIL entries (WARN allowed).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, key: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.key == key)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "{}", self.title)?;
        }
        for c in &self.checks {
            if c.detail.is_empty() {
                writeln!(f, "[{}] {}", c.status, c.key)?;
            } else {
                writeln!(f, "[{}] {}: {}", c.status, c.key, c.detail)?;
            }
        }
        Ok(())
    }
}

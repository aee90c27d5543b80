//! Pass/fail bookkeeping shared by the verification suites.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case, if any.
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn new(id: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn merge(&mut self, other: CheckResult) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// An ordered collection of named checks.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            seed: None,
            checks: Vec::new(),
        }
    }

    /// Returns the check with this id, creating it if needed.
    pub fn check(&mut self, id: &str) -> &mut CheckResult {
        if let Some(pos) = self.checks.iter().position(|c| c.id == id) {
            return &mut self.checks[pos];
        }
        self.checks.push(CheckResult::new(id));
        self.checks.last_mut().expect("just pushed")
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.title)?;
        if let Some(seed) = self.seed {
            write!(f, " (seed {seed})")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "  {verdict} {:<28} {:>6} cases", c.id, c.cases)?;
            if c.failures > 0 {
                write!(f, ", {} failed", c.failures)?;
                if let Some(first) = &c.first_failure {
                    write!(f, "; first: {first}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

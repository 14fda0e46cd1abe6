//! Pass/fail reports with counterexample witnesses.

use serde::{Deserialize, Serialize};

/// Witnesses kept per check; the failure count is always exact.
pub const MAX_WITNESSES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Number of inputs involved (the Stasheff `n`, the arity of a table entry, …).
    pub arity: usize,
    /// Basis labels (or level/label pairs) of the offending tuple.
    pub tuple: Vec<String>,
    /// Nonzero coordinates of the discrepancy, as `(label, scalar)`.
    pub discrepancy: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(&mut self, w: Witness) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Appends the failures of `other`, keeping witness order.
    pub fn absorb(&mut self, failures: usize, witnesses: Vec<Witness>) {
        if failures > 0 {
            self.passed = false;
        }
        self.failures += failures;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(witnesses.into_iter().take(room));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Set by structure validation: whether `m_1` vanishes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.checks.iter().flat_map(|c| c.witnesses.iter())
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
        if self.minimal.is_none() {
            self.minimal = other.minimal;
        }
    }

    /// One line per failing check, for error messages.
    pub fn summary(&self) -> String {
        let failing: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                let first = c
                    .witnesses
                    .first()
                    .map(|w| format!(" e.g. ({})", w.tuple.join(", ")))
                    .unwrap_or_default();
                format!("{}: {} failure(s){}", c.name, c.failures, first)
            })
            .collect();
        if failing.is_empty() {
            "all checks passed".to_string()
        } else {
            failing.join("; ")
        }
    }
}

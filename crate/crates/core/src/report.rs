//! Machine-readable validation reports shared by all modules.

use serde::{Deserialize, Serialize};

/// One failed axiom instance. `witness` names the objects, morphisms or
/// elements exhibiting the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Violation {
    pub fn new(axiom: &str, witness: Vec<String>) -> Self {
        Violation { axiom: axiom.to_string(), witness, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(checked: usize, violations: Vec<Violation>) -> Self {
        ValidationReport { valid: violations.is_empty(), checked, violations }
    }

    pub fn axioms(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.axiom.as_str()).collect()
    }
}

/// Named pass/fail line used by composite reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check { name: name.to_string(), passed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Collects violations, keeping at most `cap` witnesses per axiom so that
/// corrupted inputs do not produce unbounded reports.
#[derive(Debug)]
pub struct ViolationLog {
    cap: usize,
    counts: std::collections::BTreeMap<String, usize>,
    violations: Vec<Violation>,
    pub checked: usize,
}

impl ViolationLog {
    pub fn new(cap: usize) -> Self {
        ViolationLog { cap, counts: Default::default(), violations: Vec::new(), checked: 0 }
    }

    pub fn check(&mut self, ok: bool, make: impl FnOnce() -> Violation) {
        self.checked += 1;
        if !ok {
            self.push(make());
        }
    }

    pub fn push(&mut self, v: Violation) {
        let c = self.counts.entry(v.axiom.clone()).or_insert(0);
        *c += 1;
        if *c <= self.cap {
            self.violations.push(v);
        }
    }

    pub fn is_clean(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn finish(self) -> ValidationReport {
        ValidationReport::from_violations(self.checked, self.violations)
    }
}

impl Default for ViolationLog {
    fn default() -> Self {
        ViolationLog::new(16)
    }
}

//! Report envelope shared by every subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sectorfact_core::report::{Check, ValidationReport};
use serde::{Deserialize, Serialize};

/// What was run, recorded so a report can be reproduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retry_budget: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_ref: Option<String>,
}

impl CheckLine {
    pub fn new(id: &str, passed: bool) -> Self {
        CheckLine { id: id.to_string(), subject: None, passed, detail: None, paper_ref: None }
    }

    pub fn on(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Summarises a validation report, quoting the first violation.
    pub fn from_validation(id: &str, r: &ValidationReport) -> Self {
        let mut line = CheckLine::new(id, r.valid);
        line.detail = Some(match r.violations.first() {
            None => format!("{} checked", r.checked),
            Some(v) => format!("{} violations, first {} [{}]", r.violations.len(), v.axiom, v.witness.join(", ")),
        });
        line
    }

    pub fn from_check(id: &str, c: &Check) -> Self {
        CheckLine {
            id: id.to_string(),
            subject: Some(c.name.clone()),
            passed: c.passed,
            detail: c.detail.clone(),
            paper_ref: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub spec: CampaignSpec,
    pub valid: bool,
    pub checks: Vec<CheckLine>,
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(spec: CampaignSpec, checks: Vec<CheckLine>, details: impl Serialize) -> anyhow::Result<Self> {
        Ok(Report {
            command: spec.command.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            valid: checks.iter().all(|c| c.passed),
            spec,
            checks,
            details: serde_json::to_value(details)?,
        })
    }

    pub fn annotate(&mut self, refs: &BTreeMap<String, String>) {
        for c in &mut self.checks {
            c.paper_ref = refs.get(&c.id).cloned();
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let verdict = if self.valid { "PASS" } else { "FAIL" };
        let mut out = format!("{}: {verdict} ({passed}/{} checks)\n", self.command, self.checks.len());
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = write!(out, "  [{mark}] {}", c.id);
            if let Some(s) = &c.subject {
                let _ = write!(out, " {s}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            if let Some(r) = &c.paper_ref {
                let _ = write!(out, " ({r})");
            }
            out.push('\n');
        }
        out
    }
}

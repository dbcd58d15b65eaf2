//! Verification reports: one entry per checked statement.

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::json::{content_hash, Structure};
use crate::sweep::{AxiomReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked, in words.
    pub anchor: String,
    pub status: Status,
    /// Violated hypothesis, for skipped checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    /// First violating tuple, for failed checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Reported for information; never affects the verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status,
            hypothesis: None,
            witness: None,
            detail: None,
            informational: false,
        }
    }

    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::new(name, anchor, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, anchor: impl Into<String>, witness: Option<Vec<u32>>) -> Self {
        let mut c = Self::new(name, anchor, Status::Fail);
        c.witness = witness;
        c
    }

    pub fn skipped(name: impl Into<String>, anchor: impl Into<String>, hypothesis: impl Into<String>) -> Self {
        let mut c = Self::new(name, anchor, Status::Skipped);
        c.hypothesis = Some(hypothesis.into());
        c
    }

    pub fn from_bool(name: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        if ok {
            Self::pass(name, anchor)
        } else {
            Self::fail(name, anchor, None)
        }
    }

    pub fn from_violation(name: impl Into<String>, anchor: impl Into<String>, v: Option<Violation>) -> Self {
        match v {
            None => Self::pass(name, anchor),
            Some(v) => Self::fail(name, anchor, Some(v.witness)),
        }
    }

    /// Skipped on a hypothesis error, failed on any other error.
    pub fn from_error(name: impl Into<String>, anchor: impl Into<String>, e: &Error) -> Self {
        match e {
            Error::Hypothesis { .. } => Self::skipped(name, anchor, e.hypothesis_name().unwrap_or_default()),
            Error::Axiom { witness, .. } => {
                Self::fail(name, anchor, Some(witness.clone())).with_detail(Value::String(e.to_string()))
            }
            _ => Self::fail(name, anchor, None).with_detail(Value::String(e.to_string())),
        }
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = Some(serde_json::to_value(detail).expect("details serialize"));
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn counts(&self) -> bool {
        !self.informational && self.status == Status::Fail
    }
}

/// One check per identity in an axiom sweep: the identities that held pass,
/// the failing one carries its witness.
pub fn axiom_checks(prefix: &str, r: &AxiomReport) -> Vec<Check> {
    r.checked
        .iter()
        .map(|&id| {
            let name = format!("{prefix}: {id}");
            match &r.failure {
                Some(v) if v.identity == id => Check::fail(name, id, Some(v.witness.clone())),
                _ => Check::pass(name, id),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Target {
    pub kind: &'static str,
    pub hash: String,
}

impl Target {
    pub fn of(s: &Structure) -> Self {
        Self {
            kind: s.kind(),
            hash: content_hash(&s.to_value()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub target: Target,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Wall-clock milliseconds; only filled on request since it breaks
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, target: Target, checks: Vec<Check>) -> Self {
        let pass = !checks.iter().any(Check::counts);
        Self {
            suite: suite.into(),
            target,
            checks,
            pass,
            timing_ms: None,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.counts())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

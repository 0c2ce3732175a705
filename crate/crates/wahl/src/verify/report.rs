use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hjcore::{Characteristic, Int};
use crate::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Not recomputed; carried with a citation.
    Asserted,
    /// Neither recomputable from the fixture nor asserted.
    NotCheckable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Asserted => "asserted",
            Status::NotCheckable => "not-checkable",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::Asserted)
    }

    /// Worst of two statuses: fail, then not-checkable, then asserted, then pass.
    pub fn combine(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::Asserted => 1,
            Status::NotCheckable => 2,
            Status::Fail => 3,
        };
        if rank(other) > rank(self) { other } else { self }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub condition: String,
    pub status: Status,
    pub summary: String,
    /// Exact witnesses; integers as JSON integers, rationals as `{num, den}`.
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportEntry {
    pub fn new(condition: &str, status: Status, summary: impl Into<String>, details: Value) -> ReportEntry {
        ReportEntry { condition: condition.to_string(), status, summary: summary.into(), details, citation: None, notes: vec![] }
    }

    pub fn with_citation(mut self, citation: Option<String>) -> ReportEntry {
        self.citation = citation;
        self
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> ReportEntry {
        self.notes = notes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub schema_version: u64,
    pub fixture: String,
    pub characteristic: u64,
    #[serde(with = "json::opt_int")]
    pub k_x_squared: Option<Int>,
    pub verdict: Status,
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn new(fixture: String, p: Characteristic, k_x_squared: Option<Int>, entries: Vec<ReportEntry>) -> Self {
        let verdict = if entries.iter().all(|e| e.status.is_ok()) { Status::Pass } else { Status::Fail };
        VerificationReport { schema_version: json::SCHEMA_VERSION, fixture, characteristic: p.value(), k_x_squared, verdict, entries }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn entry(&self, condition: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.condition == condition)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<VerificationReport> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        json::check_schema_version(&v).map_err(Error::Input)?;
        serde_json::from_value(v).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let k = self.k_x_squared.as_ref().map_or("?".to_string(), |k| k.to_string());
        let _ = writeln!(
            out,
            "{} at characteristic {}: {} (K_X^2 = {k})",
            self.fixture,
            self.characteristic,
            self.verdict.as_str().to_uppercase()
        );
        for e in &self.entries {
            let _ = writeln!(out, "  {:<16} {:<14} {}", e.condition, e.status.as_str(), e.summary);
            if let Some(c) = &e.citation {
                let _ = writeln!(out, "  {:<16} {:<14} cited: {c}", "", "");
            }
            for n in &e.notes {
                let _ = writeln!(out, "  {:<16} {:<14} note: {n}", "", "");
            }
        }
        out
    }
}

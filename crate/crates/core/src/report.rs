//! Check records shared by the verification reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity with its worst numerical deviation.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub status: Status,
    pub max_deviation: f64,
}

impl IdentityRecord {
    pub fn within(identity: impl Into<String>, max_deviation: f64, tol: f64) -> Self {
        let status = if max_deviation <= tol { Status::Pass } else { Status::Fail };
        Self { identity: identity.into(), status, max_deviation }
    }

    pub fn exact(identity: impl Into<String>, holds: bool) -> Self {
        Self {
            identity: identity.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            max_deviation: if holds { 0.0 } else { 1.0 },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(records: &[IdentityRecord]) -> bool {
    records.iter().all(IdentityRecord::passed)
}

/// One check of a verification run. Failures and skips always carry a witness.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub citation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(check_id: impl Into<String>, citation: impl Into<String>) -> Self {
        Self { check_id: check_id.into(), citation: citation.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(check_id: impl Into<String>, citation: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            citation: citation.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(check_id: impl Into<String>, citation: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            citation: citation.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
        }
    }

    /// Passes when no violations were found; otherwise the first few become the witness.
    pub fn from_violations(check_id: impl Into<String>, citation: impl Into<String>, violations: &[String]) -> Self {
        if violations.is_empty() {
            return Self::pass(check_id, citation);
        }
        let mut witness = violations.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
        if violations.len() > 3 {
            witness.push_str(&format!("; and {} more", violations.len() - 3));
        }
        Self::fail(check_id, citation, witness)
    }

    pub fn from_identity(check_id: impl Into<String>, record: &IdentityRecord) -> Self {
        match record.status {
            Status::Pass => Self::pass(check_id, record.identity.clone()),
            _ => Self::fail(check_id, record.identity.clone(), format!("max deviation {:e}", record.max_deviation)),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Output of a CLI command: the check records sorted by id, plus
/// command-specific data. Wall-clock timings are only recorded on request
/// so that reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub model: String,
    pub passed: bool,
    pub counts: Counts,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<std::collections::BTreeMap<String, f64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(command: impl Into<String>, model: impl Into<String>, mut checks: Vec<CheckRecord>, data: Option<serde_json::Value>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut counts = Counts::default();
        for c in &checks {
            match c.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Skipped => counts.skipped += 1,
            }
        }
        Self { command: command.into(), model: model.into(), passed: counts.fail == 0, counts, checks, data, elapsed_ms: None }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.failed())
    }
}

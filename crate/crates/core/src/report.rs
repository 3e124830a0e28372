//! Check records and suite reports.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub anchor: String,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, trials: usize) -> Self {
        CheckRecord { id: id.into(), status, anchor: anchor.into(), trials, witness: None, note: None }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Run `f` for `trials` rounds, stopping at the first witness it returns.
pub fn run_trials(
    id: &str,
    anchor: &str,
    trials: usize,
    mut f: impl FnMut(usize) -> Result<Option<Value>>,
) -> Result<CheckRecord> {
    for t in 0..trials {
        if let Some(w) = f(t)? {
            return Ok(CheckRecord::new(id, anchor, Status::Fail, t + 1).with_witness(w));
        }
    }
    Ok(CheckRecord::new(id, anchor, Status::Pass, trials))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(cs);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

//! Verification results shared by every checker.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded discrepancy that is reported but not treated as a failure.
    Flagged,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// The statement being checked.
    pub locus: String,
    pub status: Status,
    pub witness: Value,
}

impl Claim {
    pub fn new(id: impl Into<String>, locus: impl Into<String>, ok: bool, witness: Value) -> Self {
        Claim {
            id: id.into(),
            locus: locus.into(),
            status: Status::from_bool(ok),
            witness,
        }
    }

    pub fn flagged(id: impl Into<String>, locus: impl Into<String>, witness: Value) -> Self {
        Claim {
            id: id.into(),
            locus: locus.into(),
            status: Status::Flagged,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
    }

    /// No claim failed; flagged claims are allowed.
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

impl FromIterator<Claim> for Report {
    fn from_iter<I: IntoIterator<Item = Claim>>(iter: I) -> Self {
        Report {
            claims: iter.into_iter().collect(),
        }
    }
}

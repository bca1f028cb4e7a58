use aeroplane_core::{Claim, Report, Status};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "aeroplane";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

/// What a command hands back: claims to judge, plus optional payload. No
/// timestamps or timings, so identical commands give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub summary: Summary,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl RunReport {
    pub fn new(command: String, report: Report, data: Value) -> Self {
        let summary = Summary {
            pass: report.count(Status::Pass),
            fail: report.count(Status::Fail),
            flagged: report.count(Status::Flagged),
        };
        RunReport {
            schema: SCHEMA,
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            summary,
            claims: report.claims,
            data,
        }
    }

    /// 0 when nothing failed (and, under `strict`, nothing was flagged).
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.fail > 0 || (strict && self.summary.flagged > 0) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One line per claim and a closing tally.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            out.push_str(&format!("{tag}  {:<40} {}\n", c.id, c.locus));
        }
        if !self.claims.is_empty() {
            out.push_str(&format!(
                "{} passed, {} failed, {} flagged\n",
                self.summary.pass, self.summary.fail, self.summary.flagged
            ));
        }
        out
    }
}

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Inconclusive,
    Refuted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub status: Status,
    /// One line for the table.
    pub summary: String,
    pub payload: Value,
    /// Seconds; only recorded with `--timing` so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub claims: Vec<ClaimReport>,
}

impl SuiteReport {
    pub fn new(claims: Vec<ClaimReport>) -> Self {
        SuiteReport {
            version: SCHEMA_VERSION,
            claims,
        }
    }

    pub fn worst(&self) -> Status {
        self.claims
            .iter()
            .map(|c| c.status)
            .max()
            .unwrap_or(Status::Verified)
    }

    /// 0 all verified, 2 some inconclusive, 3 some refuted.
    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            Status::Verified => 0,
            Status::Inconclusive => 2,
            Status::Refuted => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let width = self
            .claims
            .iter()
            .map(|c| c.claim_id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = String::new();
        let refuted: Vec<&str> = self
            .claims
            .iter()
            .filter(|c| c.status == Status::Refuted)
            .map(|c| c.claim_id.as_str())
            .collect();
        if !refuted.is_empty() {
            let bar = "!".repeat(72);
            let _ = writeln!(
                out,
                "{bar}\n!! REFUTED by exact computation: {}\n{bar}",
                refuted.join(", ")
            );
        }
        let _ = writeln!(out, "{:<width$}  {:<12}  summary", "claim", "status");
        for c in &self.claims {
            let time = c
                .wall_time
                .map(|t| format!(" ({t:.2}s)"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<width$}  {:<12}  {}{}",
                c.claim_id,
                c.status.as_str(),
                c.summary,
                time
            );
        }
        out
    }
}

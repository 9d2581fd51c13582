//! Machine-readable verification reports: one record per check, a summary
//! whose counts always equal the record tallies, and deterministic record
//! order (id, then parameters).

use crate::config::RunConfig;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: Value,
    pub status: Status,
    pub details: Value,
}

impl CheckRecord {
    pub fn new(id: &str, params: Value, passed: bool, details: Value) -> Self {
        CheckRecord {
            id: id.to_string(),
            params,
            status: if passed { Status::Pass } else { Status::Fail },
            details,
        }
    }

    pub fn skip(id: &str, params: Value, reason: &str) -> Self {
        CheckRecord {
            id: id.to_string(),
            params,
            status: Status::Skip,
            details: serde_json::json!({ "reason": reason }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(config: &RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| {
            (a.id.as_str(), a.params.to_string()).cmp(&(b.id.as_str(), b.params.to_string()))
        });
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.status == Status::Pass).count(),
            failed: checks.iter().filter(|c| c.status == Status::Fail).count(),
            skipped: checks.iter().filter(|c| c.status == Status::Skip).count(),
        };
        let timestamp = if config.no_timestamp {
            None
        } else {
            Some(
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        };
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            timestamp,
            checks,
            summary,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            out.push_str(&format!("{status}  {} {}\n", c.id, c.params));
        }
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed, {} skipped\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.skipped
        ));
        out
    }
}

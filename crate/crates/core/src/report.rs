//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One executed check. Failed checks always carry a nonzero witness
/// expression.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>, paper_ref: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_with_witness(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        witness: impl Into<String>,
    ) -> Check {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::Pass,
            witness: Some(witness.into()),
        }
    }

    pub fn fail(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        witness: impl Into<String>,
    ) -> Check {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub engine: String,
    pub conventions: String,
}

impl VerificationReport {
    /// Assembles a report: checks are sorted by id so output is stable.
    pub fn new(suite: impl Into<String>, mut checks: Vec<Check>) -> VerificationReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        VerificationReport {
            suite: suite.into(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            checks,
            engine: crate::conventions::ENGINE_VERSION.to_string(),
            conventions: crate::conventions::conventions_hash(),
        }
    }

    pub fn has_failures(&self) -> bool {
        self.failed > 0
    }

    pub fn merge(suite: impl Into<String>, reports: Vec<VerificationReport>) -> VerificationReport {
        let checks = reports.into_iter().flat_map(|r| r.checks).collect();
        VerificationReport::new(suite, checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        out.push_str(&format!(
            "engine: {}  conventions: {}\n",
            self.engine, self.conventions
        ));
        let id_width = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        out.push_str(&format!(
            "{:<w$}  {:<7}  {}\n",
            "check",
            "status",
            "paper_ref",
            w = id_width
        ));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{:<w$}  {:<7}  {}\n",
                c.id,
                status,
                c.paper_ref,
                w = id_width
            ));
            if c.status == Status::Fail {
                if let Some(wit) = &c.witness {
                    out.push_str(&format!("    witness: {}\n", wit));
                }
            }
        }
        out.push_str(&format!(
            "passed: {}  failed: {}  skipped: {}\n",
            self.passed, self.failed, self.skipped
        ));
        out
    }
}

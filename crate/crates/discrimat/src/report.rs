//! Machine-readable pass/fail reports shared by all verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub tool_version: String,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        CheckReport {
            suite: suite.into(),
            checks: Vec::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: 0,
        }
    }

    pub fn push(
        &mut self,
        id: impl Into<String>,
        status: Status,
        details: impl Into<String>,
        witness: Option<String>,
    ) {
        let id = id.into();
        debug_assert!(
            self.checks.iter().all(|c| c.id != id),
            "duplicate check id {id}"
        );
        self.checks.push(Check {
            id,
            status,
            details: details.into(),
            witness,
        });
    }

    pub fn pass(&mut self, id: impl Into<String>, details: impl Into<String>) {
        self.push(id, Status::Pass, details, None);
    }

    pub fn fail(&mut self, id: impl Into<String>, details: impl Into<String>) {
        self.push(id, Status::Fail, details, None);
    }

    pub fn fail_witness(
        &mut self,
        id: impl Into<String>,
        details: impl Into<String>,
        witness: String,
    ) {
        self.push(id, Status::Fail, details, Some(witness));
    }

    pub fn skip(&mut self, id: impl Into<String>, details: impl Into<String>) {
        self.push(id, Status::Skip, details, None);
    }

    /// Record a boolean outcome under one id.
    pub fn assert_check(&mut self, id: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.push(
            id,
            if ok { Status::Pass } else { Status::Fail },
            details,
            None,
        );
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One line per check, for human eyes.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("[{tag}] {}::{}: {}\n", self.suite, c.id, c.details));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation() {
        let mut r = CheckReport::new("demo", 7);
        r.pass("a", "ok");
        assert!(r.all_passed());
        r.fail("b", "broken");
        assert!(!r.all_passed());
        r.skip("c", "later");
        assert_eq!(r.checks.len(), 3);
        assert!(r.summary().contains("[FAIL] demo::b"));
    }
}

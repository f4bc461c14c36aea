//! Check reports: the uniform result type of every verification suite.
//!
//! A report is deterministic for a fixed configuration (keys are enumerated
//! or sampled with a seeded generator, and all maps are ordered), so repeated
//! runs serialize to identical documents.

use serde::Serialize;
use std::collections::BTreeMap;

/// How many failures are rendered per check; the count is always complete.
pub const FAILURE_RENDER_CAP: usize = 3;

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub key: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub instances: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, instances: u64, mut failures: Vec<Failure>) -> Self {
        let failure_count = failures.len() as u64;
        failures.truncate(FAILURE_RENDER_CAP);
        CheckEntry {
            name: name.into(),
            instances,
            failure_count,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub expect_fail: bool,
    pub instances: u64,
    pub status: String,
    pub checks: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(
        suite: impl Into<String>,
        params: BTreeMap<String, String>,
        expect_fail: bool,
        checks: Vec<CheckEntry>,
    ) -> Self {
        let instances = checks.iter().map(|c| c.instances).sum();
        let all_pass = checks.iter().all(|c| c.passed());
        let status = match (all_pass, expect_fail) {
            (true, false) => "pass",
            (false, false) => "fail",
            (false, true) => "expected-fail",
            (true, true) => "unexpected-pass",
        }
        .to_string();
        CheckReport {
            suite: suite.into(),
            params,
            expect_fail,
            instances,
            status,
            checks,
        }
    }

    /// Exit-status criterion: a plain suite must pass, a negative control
    /// must fail with at least one witness.
    pub fn satisfied(&self) -> bool {
        self.status == "pass" || self.status == "expected-fail"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {}: {}\n", self.suite, self.status));
        for (k, v) in &self.params {
            out.push_str(&format!("  config {k} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} ({} instances, {} failures)\n",
                if c.passed() { "ok" } else { "FAIL" },
                c.name,
                c.instances,
                c.failure_count
            ));
            for f in &c.failures {
                out.push_str(&format!(
                    "      at {}\n        expected {}\n        actual   {}\n",
                    f.key, f.expected, f.actual
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_logic() {
        let pass = CheckEntry::new("a", 3, vec![]);
        let fail = CheckEntry::new(
            "b",
            3,
            vec![Failure {
                key: "k".into(),
                expected: "0".into(),
                actual: "1".into(),
            }],
        );
        let r = CheckReport::new("s", BTreeMap::new(), false, vec![pass.clone()]);
        assert_eq!(r.status, "pass");
        assert!(r.satisfied());
        let r = CheckReport::new(
            "s",
            BTreeMap::new(),
            false,
            vec![pass.clone(), fail.clone()],
        );
        assert_eq!(r.status, "fail");
        assert!(!r.satisfied());
        let r = CheckReport::new("s", BTreeMap::new(), true, vec![fail]);
        assert_eq!(r.status, "expected-fail");
        assert!(r.satisfied());
        let r = CheckReport::new("s", BTreeMap::new(), true, vec![pass]);
        assert_eq!(r.status, "unexpected-pass");
        assert!(!r.satisfied());
    }

    #[test]
    fn json_roundtrips() {
        let r = CheckReport::new(
            "s",
            BTreeMap::new(),
            false,
            vec![CheckEntry::new("a", 1, vec![])],
        );
        let parsed: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed["suite"], "s");
        assert_eq!(parsed["status"], "pass");
    }
}

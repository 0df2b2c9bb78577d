//! Verification reports in JSON and text form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    /// "pass", "fail" or "unverified: <reason>".
    pub status: String,
    pub defect: Option<String>,
    pub millis: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub unverified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: BTreeMap<String, String>,
    pub symmetry: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub version: String,
}

impl VerificationReport {
    pub fn new(scenario: BTreeMap<String, String>, symmetry: String, checks: Vec<CheckRecord>) -> Self {
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.passed()).count(),
            failed: checks.iter().filter(|c| c.failed()).count(),
            unverified: checks.iter().filter(|c| !c.passed() && !c.failed()).count(),
        };
        VerificationReport { scenario, symmetry, checks, summary, version: VERSION.to_string() }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// Zeroes every wall time, leaving a reproducible report.
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.checks {
            c.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let echo: Vec<String> = self.scenario.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("scenario: {}\n", echo.join("  ")));
        out.push_str(&format!("symmetry: {}\n", self.symmetry));
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) };
            out.push_str(&format!("{:<5} {}{} ({} ms)\n", short(&c.status), c.name, params, c.millis));
            if !c.passed() {
                if let Some(d) = &c.defect {
                    out.push_str(&format!("      {d}\n"));
                }
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed, {} unverified (engine {})\n",
            s.total, s.passed, s.failed, s.unverified, self.version
        ));
        out
    }
}

fn short(status: &str) -> &str {
    match status {
        "pass" => "PASS",
        "fail" => "FAIL",
        _ => "UNVER",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(name: &str, status: &str, millis: u64) -> CheckRecord {
        CheckRecord { name: name.into(), params: BTreeMap::new(), status: status.into(), defect: None, millis }
    }

    #[test]
    fn summary_counts() {
        let r = VerificationReport::new(
            BTreeMap::new(),
            "half-loop".into(),
            vec![record("a", "pass", 3), record("b", "fail", 1), record("c", "unverified: budget", 2)],
        );
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 1, unverified: 1 });
        assert!(!r.all_passed());
        assert!(r.to_text().contains("UNVER c"));
    }

    proptest! {
        #[test]
        fn json_is_faithful(names in prop::collection::vec("[a-z.]{1,12}", 0..6), ms in 0u64..1000, pass in any::<bool>()) {
            let checks = names.iter().map(|n| record(n, if pass { "pass" } else { "fail" }, ms)).collect();
            let r = VerificationReport::new(BTreeMap::from([("scenario".into(), "bl_orbit".into())]), "half-loop".into(), checks);
            prop_assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r.clone());
            prop_assert!(r.without_timing().checks.iter().all(|c| c.millis == 0));
        }
    }
}

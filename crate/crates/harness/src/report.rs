//! The machine-readable verification report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorClass {
    Parse,
    Hypothesis,
    Engine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub kind: String,
    pub group_names: Vec<String>,
    pub hypotheses: Vec<String>,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub verdict: Verdict,
    pub millis: u64,
    pub witnesses: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_class: Option<ErrorClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindTotals {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub timestamp: String,
    pub instances: Vec<InstanceReport>,
    pub totals: BTreeMap<String, KindTotals>,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        timestamp: String,
        instances: Vec<InstanceReport>,
    ) -> Self {
        let mut totals: BTreeMap<String, KindTotals> = BTreeMap::new();
        for r in &instances {
            let t = totals.entry(r.kind.clone()).or_default();
            t.instances += 1;
            match r.verdict {
                Verdict::Pass => t.passed += 1,
                Verdict::Fail => t.failed += 1,
                Verdict::Error => t.errors += 1,
            }
        }
        VerificationReport {
            suite: suite.into(),
            timestamp,
            instances,
            totals,
        }
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.instances
            .iter()
            .filter(|r| r.verdict == verdict)
            .count()
    }

    pub fn has_error(&self, class: ErrorClass) -> bool {
        self.instances.iter().any(|r| r.error_class == Some(class))
    }

    pub fn of_kind<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a InstanceReport> + 'a {
        self.instances.iter().filter(move |r| r.kind == kind)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Formats Unix seconds as an RFC 3339 UTC timestamp.
pub fn format_timestamp(secs: i64) -> String {
    chrono::DateTime::from_timestamp(secs, 0)
        .unwrap_or_default()
        .format("%Y-%m-%dT%H:%M:%SZ")
        .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_timestamp() {
        let r = InstanceReport {
            kind: "THM_1_3".into(),
            group_names: vec![],
            hypotheses: vec![],
            lhs: Some(1),
            rhs: Some(1),
            verdict: Verdict::Pass,
            millis: 0,
            witnesses: Value::Null,
            error_class: None,
            note: None,
        };
        let mut bad = r.clone();
        bad.verdict = Verdict::Fail;
        let rep = VerificationReport::new("t", format_timestamp(0), vec![r, bad]);
        assert_eq!(
            rep.totals["THM_1_3"],
            KindTotals {
                instances: 2,
                passed: 1,
                failed: 1,
                errors: 0
            }
        );
        assert!(!rep.passed());
        assert_eq!(rep.timestamp, "1970-01-01T00:00:00Z");
        let back: VerificationReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}

//! Structured verification reports: one record per case, a summary, and
//! both a human text rendering and a machine-readable JSON serialization.
//!
//! The JSON form deliberately omits wall-clock timings so that identical
//! configurations and seeds serialize to byte-identical documents; timings
//! appear in the human rendering only.

use serde::Serialize;

/// Outcome of a single verification case.
#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    /// Every checked instance of the property held.
    Pass,
    /// The property failed; the witness describes the first counterexample.
    Fail,
    /// The case could not be evaluated; the witness carries the error.
    Error,
}

/// One verification case.
#[derive(Serialize, Clone, Debug)]
pub struct CaseRecord {
    /// Stable identifier, unique within a report and independent of the
    /// parameter mode.
    pub id: String,
    /// Human description of what the case ranged over.
    pub inputs: String,
    pub status: CaseStatus,
    /// Counterexample or error description for non-passing cases.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall-clock duration; not serialized (kept deterministic).
    #[serde(skip)]
    pub wall_ms: u64,
}

/// Aggregate counts over the case records.
#[derive(Serialize, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

/// A full suite run: configuration echo, case records in deterministic
/// order, and the summary.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub algebra: String,
    pub mode: String,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(
        suite: impl Into<String>,
        algebra: impl Into<String>,
        mode: impl Into<String>,
        cases: Vec<CaseRecord>,
    ) -> Self {
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            match c.status {
                CaseStatus::Pass => summary.passed += 1,
                CaseStatus::Fail => summary.failed += 1,
                CaseStatus::Error => summary.errored += 1,
            }
        }
        Report {
            suite: suite.into(),
            algebra: algebra.into(),
            mode: mode.into(),
            cases,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// The machine-readable serialization (pretty JSON, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The human rendering, including per-case timings.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite: {}   algebra: {}   mode: {}\n",
            self.suite, self.algebra, self.mode
        );
        for c in &self.cases {
            let tag = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "FAIL",
                CaseStatus::Error => "ERROR",
            };
            out.push_str(&format!(
                "  [{tag}] {}  ({}; {} ms)\n",
                c.id, c.inputs, c.wall_ms
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("         witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "summary: {}/{} passed",
            self.summary.passed, self.summary.total
        ));
        if self.summary.failed > 0 {
            out.push_str(&format!(", {} failed", self.summary.failed));
        }
        if self.summary.errored > 0 {
            out.push_str(&format!(", {} errored", self.summary.errored));
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new(
            "relations",
            "A2",
            "exact",
            vec![
                CaseRecord {
                    id: "a".into(),
                    inputs: "words".into(),
                    status: CaseStatus::Pass,
                    witness: None,
                    wall_ms: 3,
                },
                CaseRecord {
                    id: "b".into(),
                    inputs: "pairs".into(),
                    status: CaseStatus::Fail,
                    witness: Some("e1*e2".into()),
                    wall_ms: 7,
                },
            ],
        )
    }

    #[test]
    fn summary_counts_follow_the_statuses() {
        let r = sample();
        assert_eq!(r.summary.total, 2);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert_eq!(r.summary.errored, 0);
        assert!(!r.all_passed());
    }

    #[test]
    fn json_serialization_is_timing_free_and_stable() {
        let mut a = sample();
        let mut b = sample();
        a.cases[0].wall_ms = 1000;
        b.cases[0].wall_ms = 2;
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("wall_ms"));
        assert!(a.to_json().contains("\"witness\": \"e1*e2\""));
        // Passing cases omit the witness field entirely.
        assert!(!a.to_json().contains("\"witness\": null"));
    }

    #[test]
    fn text_rendering_lists_every_case_and_the_summary() {
        let text = sample().render_text();
        assert!(text.contains("[pass] a"));
        assert!(text.contains("[FAIL] b"));
        assert!(text.contains("witness: e1*e2"));
        assert!(text.contains("summary: 1/2 passed, 1 failed"));
    }
}

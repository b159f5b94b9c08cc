//! Structured results for verification runs.
//!
//! Every numerical claim this crate checks is reported as a [`CheckRecord`]:
//! a name, a pass/fail/skipped status, and a signed `gap` measuring how much
//! slack the claimed inequality had (nonnegative means satisfied). Records
//! aggregate into a [`VerificationReport`] that serializes to JSON, CSV, or
//! plain text. Serialization is deterministic: field order is fixed by the
//! struct layout and no timestamps or unordered maps are involved.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::spectral::CompactMatrix;
use crate::tuple::OperatorPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypotheses not met on this input; nothing was asserted.
    Skipped,
}

/// One verified (or skipped) claim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Slack of the claimed inequality: `bound - attained` (>= 0 is a pass,
    /// up to the tolerance the check applied). Absent for skipped checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    /// Seed of the trial that produced this record, when randomized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Input that attained the reported gap (matrices, spectra, scalars).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Auxiliary quantities: the two sides of the inequality, constants,
    /// hypothesis values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl CheckRecord {
    /// Grade a signed slack against a tolerance: `gap >= -tol` passes.
    pub fn from_gap(name: impl Into<String>, gap: f64, tol: f64) -> Self {
        let status = if gap >= -tol {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.into(),
            status,
            gap: Some(gap),
            seed: None,
            witness: None,
            details: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skipped,
            gap: None,
            seed: None,
            witness: None,
            details: Some(Value::String(reason.into())),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    /// Prefix the record name (used when suites are concatenated).
    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}/{}", self.name);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// A full verification run: which suite, with what configuration, and what
/// came out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, config: Value, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary {
            pass: 0,
            fail: 0,
            skipped: 0,
        };
        for c in &checks {
            match c.status {
                CheckStatus::Pass => summary.pass += 1,
                CheckStatus::Fail => summary.fail += 1,
                CheckStatus::Skipped => summary.skipped += 1,
            }
        }
        Self {
            suite: suite.into(),
            config,
            checks,
            summary,
        }
    }

    /// True when nothing failed (skips are not failures).
    pub fn is_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat CSV: one row per check. Gap and seed cells are empty when
    /// absent; witnesses and details are not included (use JSON for those).
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("suite,check,status,gap,seed\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skipped => "skipped",
            };
            let gap = c.gap.map(|g| format!("{g:.16e}")).unwrap_or_default();
            let seed = c.seed.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", self.suite, c.name, status, gap, seed));
        }
        out
    }

    /// Human-readable block with one line per check.
    pub fn to_text_string(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            match c.gap {
                Some(g) => out.push_str(&format!("{status} {} gap={g:.16e}\n", c.name)),
                None => out.push_str(&format!("{status} {}\n", c.name)),
            }
        }
        out.push_str(&format!(
            "summary pass={} fail={} skipped={}\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}

/// JSON form of a matrix: `{"dim": n, "entries": [[row], ...]}`.
pub fn matrix_to_json(m: &CompactMatrix) -> Value {
    let n = m.dim();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    serde_json::json!({ "dim": n, "entries": rows })
}

/// JSON form of an operator pair.
pub fn pair_to_json(pair: &OperatorPair) -> Value {
    serde_json::json!({
        "first": matrix_to_json(&pair.first),
        "second": matrix_to_json(&pair.second),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> VerificationReport {
        VerificationReport::new(
            "demo",
            serde_json::json!({"dim": 2}),
            vec![
                CheckRecord::from_gap("alpha", 0.5, 1e-9).with_seed(7),
                CheckRecord::from_gap("beta", -1.0, 1e-9),
                CheckRecord::skipped("gamma", "hypothesis not met"),
            ],
        )
    }

    #[test]
    fn summary_counts_statuses() {
        let r = sample_report();
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.fail, 1);
        assert_eq!(r.summary.skipped, 1);
        assert!(!r.is_pass());
    }

    #[test]
    fn gap_grading_respects_tolerance() {
        let r = CheckRecord::from_gap("near-miss", -1e-12, 1e-9);
        assert_eq!(r.status, CheckStatus::Pass);
        let r = CheckRecord::from_gap("real-miss", -1e-6, 1e-9);
        assert_eq!(r.status, CheckStatus::Fail);
    }

    #[test]
    fn json_round_trips() {
        let r = sample_report();
        let s = r.to_json_string();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.suite, "demo");
        assert_eq!(back.checks.len(), 3);
        assert_eq!(back.summary, r.summary);
        // Deterministic output: serializing again is byte-identical.
        assert_eq!(s, back.to_json_string());
    }

    #[test]
    fn csv_has_header_and_one_row_per_check() {
        let csv = sample_report().to_csv_string();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "suite,check,status,gap,seed");
        assert!(lines[1].starts_with("demo,alpha,pass,"));
        assert!(lines[1].ends_with(",7"));
        assert!(lines[3].ends_with("skipped,,"));
    }

    #[test]
    fn text_lists_every_check_and_a_summary() {
        let text = sample_report().to_text_string();
        assert!(text.contains("PASS alpha"));
        assert!(text.contains("FAIL beta"));
        assert!(text.contains("SKIP gamma"));
        assert!(text.contains("summary pass=1 fail=1 skipped=1"));
    }
}

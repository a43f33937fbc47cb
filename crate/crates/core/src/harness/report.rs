//! Line-delimited JSON report: one record per check, then a summary line.

use serde::{Deserialize, Serialize};

use super::config::Suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub suite: Suite,
    pub check_id: String,
    /// The statement being checked.
    pub anchor: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    /// `None` for exact comparisons.
    pub tolerance: Option<f64>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub n: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub all_pass: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let line = SummaryLine {
            summary: self.summary.clone(),
        };
        out.push_str(&serde_json::to_string(&line).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let (last, rest) = lines
            .split_last()
            .ok_or_else(|| serde::de::Error::custom("empty report"))?;
        let records = rest
            .iter()
            .map(|l| serde_json::from_str(l))
            .collect::<Result<_, _>>()?;
        let SummaryLine { summary } = serde_json::from_str(last)?;
        Ok(Self { records, summary })
    }

    /// The report with every runtime field zeroed.
    pub fn without_runtimes(&self) -> Self {
        let mut r = self.clone();
        r.records.iter_mut().for_each(|c| c.runtime_ms = 0.0);
        r.summary.runtime_ms = 0.0;
        r
    }
}

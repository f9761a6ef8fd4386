//! Machine-readable reports: a fixed JSON schema and CSV emission.
//!
//! JSON schema:
//! `{command, inputs, results: [{quantity, value, provenance, theorem?, verdict?}], version}`.
//! Field order is fixed by the struct definitions and map keys are sorted,
//! so identical runs emit byte-identical output.

use crate::bounds::Verdict;
use crate::dumbbell::SweepRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<ResultRow>,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResultRow {
    pub quantity: String,
    pub value: f64,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl ResultRow {
    pub fn new(quantity: impl Into<String>, value: f64, provenance: &str) -> Self {
        ResultRow {
            quantity: quantity.into(),
            value,
            provenance: provenance.to_string(),
            theorem: None,
            verdict: None,
        }
    }

    pub fn with_theorem(mut self, token: &str) -> Self {
        self.theorem = Some(token.to_string());
        self
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = Some(verdict_label(verdict).to_string());
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.verdict = Some(if pass { "pass" } else { "fail" }.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(
            self.verdict.as_deref(),
            None | Some("pass") | Some("satisfied") | Some("inconclusive")
        )
    }
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Satisfied => "pass",
        Verdict::Violated => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, row: ResultRow) -> &mut Self {
        self.results.push(row);
        self
    }

    /// True when no row carries a failing verdict.
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV with the fixed header `quantity,value,provenance,theorem,verdict`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,value,provenance,theorem,verdict\n");
        for r in &self.results {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&r.quantity),
                r.value,
                r.provenance,
                r.theorem.as_deref().unwrap_or(""),
                r.verdict.as_deref().unwrap_or(""),
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV for dumbbell sweeps, fixed header `L,C,ratio_p,ratio_q,source`.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("L,C,ratio_p,ratio_q,source\n");
    for r in records {
        let source = match r.source {
            crate::dumbbell::SweepSource::Asymptotic => "asymptotic",
            crate::dumbbell::SweepSource::Mesh => "mesh",
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.neck_length, r.neck_circumference, r.ratio_p, r.ratio_q, source
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_schema() {
        let mut report = Report::new("model-eval");
        report.input("space", "torus:1,1");
        report.push(ResultRow::new("f", 0.3826, "exact"));
        report.push(
            ResultRow::new("ratio", 0.5411, "exact")
                .with_theorem("t1_1")
                .with_verdict(Verdict::Satisfied),
        );
        let json = report.to_json();
        let parsed: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        assert!(report.all_passed());
        // unknown fields are rejected (schema is closed)
        let bad = json.replace("\"command\"", "\"commandx\"");
        assert!(serde_json::from_str::<Report>(&bad).is_err());
    }

    #[test]
    fn csv_escaping_and_failure_detection() {
        let mut report = Report::new("verify");
        report.push(ResultRow::new("a,b", 1.0, "exact").with_pass(false));
        let csv = report.to_csv();
        assert!(csv.starts_with("quantity,value,provenance,theorem,verdict\n"));
        assert!(csv.contains("\"a,b\""));
        assert!(!report.all_passed());
    }
}

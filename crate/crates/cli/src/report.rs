use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use shufflealg::arith::EvalContext;
use shufflealg::combinatorics::HilbertTable;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// How a command ended when it did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A check failed; the payload is the rendered report (exit 1).
    Check(String),
    /// An evaluation error such as a pole (exit 1).
    Eval(String),
    /// Bad flags, configuration or input syntax (exit 2).
    Usage(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextInfo {
    pub q1: String,
    pub q2: String,
    pub lambda: String,
    pub mode: String,
}

impl From<&EvalContext> for ContextInfo {
    fn from(ctx: &EvalContext) -> Self {
        ContextInfo {
            q1: ctx.q1.to_string(),
            q2: ctx.q2.to_string(),
            lambda: ctx.lambda.to_string(),
            mode: ctx.mode.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: u32,
    pub suite: String,
    pub seed: u64,
    pub context: ContextInfo,
    pub passed: bool,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, ctx: &EvalContext) -> Self {
        Report {
            version: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            context: ctx.into(),
            passed: true,
            summary: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { id: id.into(), passed, detail: detail.into() });
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("summary values serialize");
        self.summary.insert(key.to_string(), v);
    }

    /// Sorts the checks by id and sets the overall verdict.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.passed = self.checks.iter().all(|c| c.passed);
        self
    }
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8").trim_end().to_string()
}

pub fn hilbert(t: &HilbertTable, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(t).expect("table serializes"),
        Format::Csv => csv_rows(
            &["mode", "n", "dim"],
            t.dims.iter().enumerate().map(|(n, d)| vec![t.mode.clone(), n.to_string(), d.to_string()]),
        ),
        Format::Text => t.dims.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    }
}

pub fn verify(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes"),
        Format::Csv => csv_rows(
            &["suite", "seed", "id", "passed", "detail"],
            r.checks.iter().map(|c| {
                vec![r.suite.clone(), r.seed.to_string(), c.id.clone(), c.passed.to_string(), c.detail.clone()]
            }),
        ),
        Format::Text => {
            let mut lines = vec![format!(
                "suite {} seed {} q1={} q2={} lambda={} mode={}",
                r.suite, r.seed, r.context.q1, r.context.q2, r.context.lambda, r.context.mode
            )];
            for c in &r.checks {
                lines.push(format!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail));
            }
            for (k, v) in &r.summary {
                lines.push(format!("{k}: {v}"));
            }
            lines.push(if r.passed { "result: pass".into() } else { "result: fail".into() });
            lines.join("\n")
        }
    }
}

pub fn value(v: &str, format: Format) -> String {
    match format {
        Format::Json => serde_json::json!({ "value": v }).to_string(),
        Format::Csv | Format::Text => v.to_string(),
    }
}

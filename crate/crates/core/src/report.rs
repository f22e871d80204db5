//! JSON, CSV and plain-text renderings of verification results.
//!
//! Counts that fit in 64 bits are written as JSON numbers and larger ones as
//! decimal strings. Field order is fixed by the structs below.

use crate::error::{LabError, Result};
use crate::splitting::SplitCountReport;
use crate::verify::{JobVerdict, PointResult, SCHEMA};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(LabError::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn big_value(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

fn opt_value(v: Option<&BigUint>) -> Value {
    v.map_or(Value::Null, big_value)
}

fn opt_text(v: Option<&BigUint>) -> String {
    v.map_or_else(String::new, BigUint::to_string)
}

fn params_text(names: &[&str], values: &[u64]) -> String {
    names.iter().zip(values).map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct JsonPoint<'a> {
    params: serde_json::Map<String, Value>,
    brute: Value,
    formula: Value,
    status: &'a str,
    verdict: &'a str,
    note: &'a str,
    seconds: f64,
}

#[derive(Serialize)]
struct JsonSummary {
    points: usize,
    matched: usize,
    mismatched: usize,
    skipped: usize,
    formula_unavailable: usize,
    proved_mismatches: usize,
    conjectural_mismatches: usize,
}

#[derive(Serialize)]
struct JsonVerdict<'a> {
    schema: &'a str,
    statement: &'a str,
    seed: u64,
    scan_bound: u64,
    points: Vec<JsonPoint<'a>>,
    summary: JsonSummary,
    exit_code: i32,
    seconds: f64,
}

fn json_point<'a>(names: &[&str], p: &'a PointResult) -> JsonPoint<'a> {
    let mut params = serde_json::Map::new();
    for (n, v) in names.iter().zip(&p.params) {
        params.insert((*n).to_string(), Value::from(*v));
    }
    JsonPoint {
        params,
        brute: opt_value(p.brute.as_ref()),
        formula: opt_value(p.formula.as_ref()),
        status: p.status.as_str(),
        verdict: p.verdict.as_str(),
        note: &p.note,
        seconds: p.seconds,
    }
}

pub fn to_json(v: &JobVerdict) -> Result<String> {
    let names = v.param_names();
    let s = &v.summary;
    let doc = JsonVerdict {
        schema: SCHEMA,
        statement: v.statement.as_str(),
        seed: v.seed,
        scan_bound: v.scan_bound,
        points: v.points.iter().map(|p| json_point(names, p)).collect(),
        summary: JsonSummary {
            points: s.points,
            matched: s.matched,
            mismatched: s.mismatched,
            skipped: s.skipped,
            formula_unavailable: s.unavailable,
            proved_mismatches: s.proved_mismatches,
            conjectural_mismatches: s.conjectural_mismatches,
        },
        exit_code: v.exit_code(),
        seconds: v.seconds,
    };
    let mut out = serde_json::to_string_pretty(&doc).map_err(|e| LabError::Io(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

pub const CSV_HEADER: [&str; 7] = ["statement", "params", "brute", "formula", "status", "verdict", "seconds"];

pub fn to_csv(v: &JobVerdict) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| LabError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for p in &v.points {
        w.write_record([
            v.statement.as_str().to_string(),
            params_text(v.param_names(), &p.params),
            opt_text(p.brute.as_ref()),
            opt_text(p.formula.as_ref()),
            p.status.to_string(),
            p.verdict.to_string(),
            p.seconds.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| LabError::Io(e.to_string()))
}

pub fn to_text(v: &JobVerdict) -> String {
    let mut out = format!("{}  ({} points)\n", v.statement, v.summary.points);
    for p in &v.points {
        out.push_str(&format!(
            "  {:<18} brute={:<12} formula={:<12} {:<11} {}",
            params_text(v.param_names(), &p.params),
            opt_text(p.brute.as_ref()),
            opt_text(p.formula.as_ref()),
            p.status,
            p.verdict
        ));
        if !p.note.is_empty() {
            out.push_str(&format!("  [{}]", p.note));
        }
        out.push('\n');
    }
    let s = &v.summary;
    out.push_str(&format!(
        "summary: {} match, {} mismatch, {} skipped, {} without formula\n",
        s.matched, s.mismatched, s.skipped, s.unavailable
    ));
    out
}

pub fn render(v: &JobVerdict, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(v),
        Format::Csv => to_csv(v),
        Format::Text => Ok(to_text(v)),
    }
}

/// Writes the rendering to `out`.
pub fn emit(v: &JobVerdict, format: Format, out: &mut dyn Write) -> Result<()> {
    out.write_all(render(v, format)?.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct JsonSplit<'a> {
    q: u64,
    m: usize,
    n: usize,
    defining_poly: &'a str,
    alpha: &'a [u64],
    brute: Value,
    formula: Value,
    status: &'a str,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pointed: Option<JsonPointed<'a>>,
    seconds: f64,
}

#[derive(Serialize)]
struct JsonPointed<'a> {
    x: &'a [u64],
    count: u64,
}

/// Single-instance report; `pointed` adds the number of splitting subspaces
/// through a base point given by its coordinates.
pub fn split_report_json(r: &SplitCountReport, pointed: Option<(&[u64], u64)>) -> Result<String> {
    let doc = JsonSplit {
        q: r.q,
        m: r.m,
        n: r.n,
        defining_poly: &r.defining_poly,
        alpha: &r.alpha,
        brute: opt_value(r.brute.as_ref()),
        formula: opt_value(r.formula.as_ref()),
        status: r.status.as_str(),
        verdict: r.verdict.as_str(),
        pointed: pointed.map(|(x, count)| JsonPointed { x, count }),
        seconds: r.seconds,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| LabError::Io(e.to_string()))
}

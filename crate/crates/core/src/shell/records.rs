//! Output records: ordered `key: value` groups.
//!
//! In `records` format every record starts with `record: <type>`, then one
//! `key: value` line per field in a fixed order, then a blank line. Fields
//! named `duration_ms` carry wall-clock time and are the only
//! non-deterministic content.

use std::fmt::Display;
use std::io::{self, Write};

use crate::bits::PointSet;
use crate::verify::{CheckReport, ReportKind, SamplePlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Record {
        Record { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Record {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Records => {
                writeln!(out, "record: {}", self.kind)?;
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {v}")?;
                }
                writeln!(out)
            }
            Format::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                writeln!(out, "[{}]", self.kind)?;
                for (k, v) in &self.fields {
                    writeln!(out, "  {k:<width$}  {v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses a record stream back into records.
pub fn parse_records(text: &str) -> Vec<Record> {
    let mut out = Vec::new();
    let mut current: Option<Record> = None;
    for line in text.lines() {
        if line.is_empty() {
            out.extend(current.take());
            continue;
        }
        let (k, v) = line.split_once(": ").unwrap_or((line.trim_end_matches(':'), ""));
        match (&mut current, k) {
            (None, "record") => current = Some(Record::new(v)),
            (Some(r), _) => r.fields.push((k.to_string(), v.to_string())),
            (None, _) => {}
        }
    }
    out.extend(current);
    out
}

pub fn set_field(s: &PointSet) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.to_string()
    }
}

pub fn report_records(report: &CheckReport, plan: &SamplePlan) -> Vec<Record> {
    let verdict = match report.kind {
        ReportKind::Theorem if report.failed == 0 => "pass",
        ReportKind::Theorem => "FAIL",
        ReportKind::Search => "search",
        ReportKind::Experimental => "experimental",
    };
    let mut r = Record::new("report")
        .field("check", &report.check)
        .field("space", &report.space)
        .field("kind", report.kind)
        .field("mode", report.mode)
        .field("seed", plan.seed)
        .field("samples", plan.samples)
        .field("sampled", report.sampled);
    for (reason, count) in &report.skipped {
        r = r.field(&format!("skipped_{reason}"), count);
    }
    r = r.field("applicable", report.applicable).field("passed", report.passed).field("failed", report.failed);
    for (k, v) in &report.notes {
        r = r.field(&format!("note_{k}"), v);
    }
    r = r.field("verdict", verdict).field("duration_ms", report.duration_ms);
    let mut out = vec![r];
    for w in &report.witnesses {
        let mut rec = Record::new("witness").field("check", &report.check).field("label", &w.label).field("size", w.set.len()).field("set", set_field(&w.set));
        rec = rec.field("point", w.point.map_or("-".to_string(), |p| p.to_string()));
        out.push(rec);
    }
    out
}

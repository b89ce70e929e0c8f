//! Check reports.

use std::fmt;

use crate::bits::PointSet;

use super::plan::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportKind {
    /// Failures mean a theorem was contradicted.
    Theorem,
    /// Non-arising exhibits; never a failure.
    Search,
    /// Evidence for an open problem; never a failure.
    Experimental,
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportKind::Theorem => "theorem",
            ReportKind::Search => "search",
            ReportKind::Experimental => "EXPERIMENTAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub set: PointSet,
    pub point: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub space: String,
    pub mode: Mode,
    pub kind: ReportKind,
    pub sampled: usize,
    /// Skip reasons in a fixed order, each with its count.
    pub skipped: Vec<(&'static str, usize)>,
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<(String, String)>,
    pub duration_ms: u128,
}

/// Witnesses kept per report; counts are always complete.
pub const MAX_WITNESSES: usize = 16;

impl CheckReport {
    pub fn new(check: &str, space: &str, mode: Mode, kind: ReportKind, reasons: &[&'static str]) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            space: space.to_string(),
            mode,
            kind,
            sampled: 0,
            skipped: reasons.iter().map(|&r| (r, 0)).collect(),
            applicable: 0,
            passed: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            duration_ms: 0,
        }
    }

    pub fn skip(&mut self, reason: &str) {
        let slot = self.skipped.iter_mut().find(|(r, _)| *r == reason).unwrap_or_else(|| panic!("unknown skip reason {reason}"));
        slot.1 += 1;
    }

    pub fn skipped(&self, reason: &str) -> usize {
        self.skipped.iter().find(|(r, _)| *r == reason).map_or(0, |(_, c)| *c)
    }

    pub fn total_skipped(&self) -> usize {
        self.skipped.iter().map(|(_, c)| c).sum()
    }

    pub fn pass(&mut self) {
        self.applicable += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, label: impl Into<String>, set: &PointSet, point: Option<usize>) {
        self.applicable += 1;
        self.failed += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { label: label.into(), set: set.clone(), point });
        }
    }

    pub fn note(&mut self, key: &str, value: impl fmt::Display) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    /// Sampled items are either skipped or applicable, and applicable ones pass or fail.
    pub fn is_consistent(&self) -> bool {
        self.sampled == self.total_skipped() + self.applicable && self.applicable == self.passed + self.failed
    }

    /// Only theorem reports can fail.
    pub fn ok(&self) -> bool {
        self.kind != ReportKind::Theorem || self.failed == 0
    }
}

/// `size x count` pairs in ascending size, e.g. `9x10,15x1`.
pub fn histogram(values: impl IntoIterator<Item = usize>) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for v in values {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    let parts: Vec<String> = counts.iter().map(|(k, c)| format!("{k}x{c}")).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(",")
    }
}

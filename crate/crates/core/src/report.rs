//! JSON-lines verification reports.

use std::fmt;

use serde_json::{json, Value};

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Violated,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Violated => "violated",
            Status::Skipped => "skipped",
        })
    }
}

/// One side of a claim.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Float(f64),
    Text(String),
}

impl Quantity {
    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Exact(q) => json!({"rational": rational::format(q), "float": rational::to_f64(q)}),
            Quantity::Float(x) => json!(x),
            Quantity::Text(s) => json!(s),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(q) => write!(f, "{} ({})", rational::format(q), rational::to_f64(q)),
            Quantity::Float(x) => write!(f, "{x}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

impl From<Rational> for Quantity {
    fn from(q: Rational) -> Self {
        Quantity::Exact(q)
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Float(x)
    }
}

impl From<&str> for Quantity {
    fn from(s: &str) -> Self {
        Quantity::Text(s.to_string())
    }
}

impl From<String> for Quantity {
    fn from(s: String) -> Self {
        Quantity::Text(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub claim: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub status: Status,
    /// Presentation and vertex or edge the record refers to.
    pub witness_ref: String,
}

impl Record {
    pub fn new(
        claim: impl Into<String>,
        lhs: impl Into<Quantity>,
        rhs: impl Into<Quantity>,
        status: Status,
        witness_ref: impl Into<String>,
    ) -> Self {
        Record {
            claim: claim.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            status,
            witness_ref: witness_ref.into(),
        }
    }

    /// Pass iff `ok`.
    pub fn check(
        claim: impl Into<String>,
        lhs: impl Into<Quantity>,
        rhs: impl Into<Quantity>,
        ok: bool,
        witness_ref: impl Into<String>,
    ) -> Self {
        let status = if ok { Status::Pass } else { Status::Violated };
        Record::new(claim, lhs, rhs, status, witness_ref)
    }

    pub fn skipped(claim: impl Into<String>, reason: impl Into<String>, witness_ref: impl Into<String>) -> Self {
        Record::new(claim, Quantity::Text(reason.into()), Quantity::Text(String::new()), Status::Skipped, witness_ref)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "status": self.status.to_string(),
            "witness_ref": self.witness_ref,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn any_violated(&self) -> bool {
        self.count(Status::Violated) > 0
    }

    pub fn violations(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Violated)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// One JSON object per line, in record order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_json().to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Record> for Report {
    fn from_iter<I: IntoIterator<Item = Record>>(iter: I) -> Self {
        Report {
            records: iter.into_iter().collect(),
        }
    }
}

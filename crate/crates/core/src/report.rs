//! Pass/fail records for identity checks.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Formula,
    Egf,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Formula => "formula",
            Method::Egf => "egf",
        }
    }
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub n: usize,
    #[serde(serialize_with = "decimal")]
    pub left: BigInt,
    #[serde(serialize_with = "decimal")]
    pub right: BigInt,
    pub pass: bool,
}

/// One identity checked at several `n`. `pass` holds iff every entry passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    identity: String,
    left_method: Vec<Method>,
    right_method: Vec<Method>,
    entries: Vec<Entry>,
    pass: bool,
}

impl VerifyReport {
    pub fn new(identity: impl Into<String>, left_method: &[Method], right_method: &[Method]) -> Self {
        Self {
            identity: identity.into(),
            left_method: left_method.to_vec(),
            right_method: right_method.to_vec(),
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, n: usize, left: impl Into<BigInt>, right: impl Into<BigInt>) {
        let (left, right) = (left.into(), right.into());
        let pass = left == right;
        self.pass &= pass;
        self.entries.push(Entry { n, left, right, pass });
    }

    pub fn identity(&self) -> &str {
        &self.identity
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn left_method(&self) -> &[Method] {
        &self.left_method
    }

    pub fn right_method(&self) -> &[Method] {
        &self.right_method
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportSet {
    pub reports: Vec<VerifyReport>,
}

impl ReportSet {
    pub fn push(&mut self, r: VerifyReport) {
        self.reports.push(r);
    }

    pub fn extend(&mut self, other: ReportSet) {
        self.reports.extend(other.reports);
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerifyReport::passed)
    }

    pub fn get(&self, identity: &str) -> Option<&VerifyReport> {
        self.reports.iter().find(|r| r.identity == identity)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let methods = |m: &[Method]| m.iter().map(|m| m.as_str()).collect::<Vec<_>>().join("+");
        for r in &self.reports {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let range = match (r.entries.first(), r.entries.last()) {
                (Some(a), Some(b)) => format!("n={}..{}", a.n, b.n),
                _ => "no entries".to_string(),
            };
            let _ = writeln!(
                out,
                "[{status}] {} ({} vs {}; {range})",
                r.identity,
                methods(&r.left_method),
                methods(&r.right_method)
            );
            for e in r.failures() {
                let _ = writeln!(out, "    n={}: left={} right={}", e.n, e.left, e.right);
            }
        }
        let passed = self.reports.iter().filter(|r| r.pass).count();
        let _ = writeln!(out, "{passed}/{} identities pass", self.reports.len());
        out
    }
}

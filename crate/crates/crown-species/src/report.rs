//! Verification reports: one record per checked identity, rendered as text or JSON.

use std::fmt::Display;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided => "undecided",
        }
    }

    /// Fail dominates undecided, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Undecided, _) | (_, Status::Undecided) => Status::Undecided,
            _ => Status::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub item: String,
    pub expected: String,
    pub got: String,
    pub precision: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub details: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        VerificationReport { check: check.to_string(), params: BTreeMap::new(), status: Status::Pass, details: vec![] }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, name: &str, expected: &str, got: &str, precision: &str, ok: bool) {
        self.push_status(name, expected, got, precision, if ok { Status::Pass } else { Status::Fail });
    }

    pub fn push_status(&mut self, name: &str, expected: &str, got: &str, precision: &str, status: Status) {
        self.details.push(CheckRecord {
            item: name.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            precision: precision.to_string(),
            status,
        });
        self.status = self.status.combine(status);
    }

    /// Appends every record of `other`, prefixing names with its check id.
    pub fn absorb(&mut self, other: VerificationReport) {
        for r in other.details {
            let name = format!("{}/{}", other.check, r.item);
            self.push_status(&name, &r.expected, &r.got, &r.precision, r.status);
        }
    }

    pub fn finish(mut self) -> Self {
        if self.details.is_empty() {
            self.status = Status::Undecided;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.details.iter().find(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{} [{}]: {}\n", self.check, params.join(" "), self.status.as_str().to_uppercase()));
        for r in &self.details {
            out.push_str(&format!(
                "  {:<9} {}  expected: {}  got: {}  ({})\n",
                r.status.as_str(),
                r.item,
                r.expected,
                r.got,
                r.precision
            ));
        }
        if let Some(r) = self.first_failure() {
            out.push_str(&format!("  first failure: {}: {} != {}\n", r.item, r.expected, r.got));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

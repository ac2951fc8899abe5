use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// One checked law. A failing entry always carries a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub law: String,
    pub status: Status,
    pub witness: Option<Map<String, Value>>,
    pub mode: String,
}

impl Entry {
    pub fn pass(law: impl Into<String>, mode: impl Into<String>) -> Self {
        Entry {
            law: law.into(),
            status: Status::Pass,
            witness: None,
            mode: mode.into(),
        }
    }

    pub fn fail(law: impl Into<String>, mode: impl Into<String>, witness: Map<String, Value>) -> Self {
        Entry {
            law: law.into(),
            status: Status::Fail,
            witness: Some(witness),
            mode: mode.into(),
        }
    }

    /// A pass/fail entry whose witness (kept only on failure) is `evidence`.
    pub fn verdict(
        law: impl Into<String>,
        ok: bool,
        mode: impl Into<String>,
        evidence: Map<String, Value>,
    ) -> Self {
        if ok {
            Self::pass(law, mode)
        } else {
            Self::fail(law, mode, evidence)
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

/// The outcome of a named suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub entries: Vec<Entry>,
}

impl LawReport {
    pub fn new(suite: impl Into<String>) -> Self {
        LawReport {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    /// Appends every entry of `other` with its law renamed to `prefix/law`.
    pub fn absorb(&mut self, prefix: &str, other: LawReport) {
        for mut e in other.entries {
            e.law = format!("{prefix}/{}", e.law);
            self.entries.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(Entry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn entry(&self, law: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.law == law)
    }

    /// Whether the named law is present and passed.
    pub fn law_passed(&self, law: &str) -> bool {
        self.entry(law).is_some_and(Entry::passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "suite {}: {} laws, {} failed",
            self.suite,
            self.entries.len(),
            failed
        )?;
        for e in &self.entries {
            write!(f, "  [{}] {} ({})", e.status, e.law, e.mode)?;
            if let Some(w) = &e.witness {
                let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                write!(f, "\n      witness: {}", parts.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

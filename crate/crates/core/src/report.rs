//! Validation reports.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Which identity failed, e.g. `leibniz` or `maurer-cartan`.
    pub identity: String,
    /// The offending basis tuple or index pair.
    pub at: String,
    /// Residual or explanation.
    pub detail: String,
}

/// Outcome of an exhaustive check over basis tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub violations: Vec<Violation>,
    /// Tuples that were evaluated completely.
    pub checked: usize,
    /// Tuples skipped because an intermediate value left the window.
    pub untested: usize,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), ..Default::default() }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, identity: impl Into<String>, at: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { identity: identity.into(), at: at.into(), detail: detail.into() });
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
        self.untested += other.untested;
    }

    /// Whether some violation mentions `needle` in its location.
    pub fn cites(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.at.contains(needle))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "{}: ok ({} checked, {} untested)", self.subject, self.checked, self.untested)
        } else {
            writeln!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {} at {}: {}", v.identity, v.at, v.detail)?;
            }
            Ok(())
        }
    }
}

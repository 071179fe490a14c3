use std::fmt;

use serde::Serialize;

/// One violated law, with a short category tag and the witnessing data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub message: String,
    pub witness: Option<String>,
}

/// Outcome of a checker. Empty means every checked law held.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Set when a bounded search was cut short, so an empty report is only
    /// evidence up to the stated bound.
    pub incomplete: bool,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn push(&mut self, kind: &str, message: impl Into<String>) {
        self.violations.push(Violation { kind: kind.to_string(), message: message.into(), witness: None });
    }

    pub fn push_witness(&mut self, kind: &str, message: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            kind: kind.to_string(),
            message: message.into(),
            witness: Some(witness.into()),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.incomplete |= other.incomplete;
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)?;
        if let Some(w) = &self.witness {
            write!(f, " [witness: {w}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")?;
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        if self.incomplete {
            write!(f, "\n(incomplete: search bound reached)")?;
        }
        Ok(())
    }
}

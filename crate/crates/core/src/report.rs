//! Itemized pass/fail reports with witnesses for failed identities.

use std::fmt;

use serde::Serialize;

/// One verified identity: name, verdict, and on failure the first basis
/// vector where the two sides disagree together with both values.
///
/// Informational items (`required == false`) record a verdict that is
/// reported but not demanded, e.g. whether a braiding is symmetric or
/// whether the cyclic power condition holds; they never fail a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Basis vector of the domain on which the identity fails.
    pub basis: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
    /// Free-form annotations (conventions in force, construction notes).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn push_pass(&mut self, name: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            passed: true,
            required: true,
            witness: None,
            note: None,
        });
    }

    pub fn push_verdict(&mut self, name: impl Into<String>, passed: bool, witness: Option<Witness>) {
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            required: true,
            witness,
            note: None,
        });
    }

    /// Reported-but-not-required verdict.
    pub fn push_info(&mut self, name: impl Into<String>, passed: bool, note: Option<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            required: false,
            witness: None,
            note,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Every required identity holds.
    pub fn all_passed(&self) -> bool {
        self.items.iter().filter(|i| i.required).all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.required && !i.passed)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.items.extend(other.items);
        self.notes.extend(other.notes);
    }

    /// Look up a single item by name.
    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let mark = match (item.required, item.passed) {
                (true, true) => "ok",
                (true, false) => "FAIL",
                (false, true) => "yes (info)",
                (false, false) => "no (info)",
            };
            write!(f, "{:<56} {}", item.name, mark)?;
            if let Some(w) = &item.witness {
                write!(f, "  [witness {}: lhs={}, rhs={}]", w.basis, w.lhs, w.rhs)?;
            }
            if let Some(n) = &item.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

//! Structured results for the verification suites. All values are
//! rendered as exact strings so that machine output never contains
//! floating point.

use serde::Serialize;

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Verified,
    Counterexample,
}

/// A counterexample graph together with the exact values that violate
/// the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Named exact values, e.g. `avi` -> `13/9`.
    pub values: std::collections::BTreeMap<String, String>,
}

impl Witness {
    pub fn from_graph(g: &crate::graph::Graph) -> Self {
        Witness {
            vertex_count: g.vertex_count(),
            edges: g.edges(),
            values: Default::default(),
        }
    }

    pub fn with_value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

/// Result of checking one claim over one range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Stable identifier of the claim being checked.
    pub claim: String,
    /// Human-readable description of the range covered.
    pub range: String,
    pub status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Supplementary detail lines (exact values as strings).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn verified(claim: &str, range: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            range: range.into(),
            status: ReportStatus::Verified,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn counterexample(claim: &str, range: impl Into<String>, witness: Witness) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            range: range.into(),
            status: ReportStatus::Counterexample,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == ReportStatus::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

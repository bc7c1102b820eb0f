//! Check rows and suite reports shared by the command line and the tests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One verified identity: the measured `value` against its `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check_id: String,
    /// The identity being checked, written out.
    pub paper_anchor: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckRow {
    /// Passes when `value ≤ bound`.
    pub fn at_most(id: &str, anchor: &str, value: f64, bound: f64) -> Self {
        Self {
            check_id: id.to_string(),
            paper_anchor: anchor.to_string(),
            value,
            bound,
            pass: value <= bound,
        }
    }

    /// Passes when `value ≥ bound`.
    pub fn at_least(id: &str, anchor: &str, value: f64, bound: f64) -> Self {
        Self {
            check_id: id.to_string(),
            paper_anchor: anchor.to_string(),
            value,
            bound,
            pass: value >= bound,
        }
    }

    /// A row for a check that could not be evaluated.
    pub fn failed(id: &str, anchor: &str, reason: &str) -> Self {
        Self {
            check_id: id.to_string(),
            paper_anchor: format!("{anchor} [error: {reason}]"),
            value: f64::NAN,
            bound: f64::NAN,
            pass: false,
        }
    }
}

/// Rows of one or more suites, in execution order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub rows: Vec<CheckRow>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            rows: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.pass &= row.pass;
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: Report) {
        for row in other.rows {
            self.push(row);
        }
    }

    pub fn row(&self, id: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.check_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct")
    }
}

/// Per-check bound overrides keyed by `check_id`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tolerances {
    overrides: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn set(&mut self, id: &str, bound: f64) {
        self.overrides.insert(id.to_string(), bound);
    }

    /// The override for `id`, else `default`.
    pub fn get(&self, id: &str, default: f64) -> f64 {
        self.overrides.get(id).copied().unwrap_or(default)
    }

    pub fn is_empty(&self) -> bool {
        self.overrides.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.overrides.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_tracks_failures() {
        let mut r = Report::new("demo");
        r.push(CheckRow::at_most("a", "x = 0", 1e-9, 1e-8));
        assert!(r.pass);
        r.push(CheckRow::at_least("b", "y ≥ 1", 0.5, 1.0));
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"paper_anchor\""));
    }

    #[test]
    fn nan_never_passes() {
        assert!(!CheckRow::at_most("a", "", f64::NAN, 1.0).pass);
        assert!(!CheckRow::at_least("a", "", f64::NAN, 1.0).pass);
    }

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        assert_eq!(t.get("k", 2.0), 2.0);
        t.set("k", 3.0);
        assert_eq!(t.get("k", 2.0), 3.0);
    }
}

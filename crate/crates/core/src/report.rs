//! Shared report types: pass/fail ledgers for inequality checks and the
//! per-sample/per-triple witnesses they carry.

use serde::Serialize;

/// How a threshold check traversed each triple's prime range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// Full range scanned; observed counts and slacks are exact.
    Exact,
    /// Descending scan stopped once the threshold was certified; observed is
    /// the count at stop, a lower bound on the true count.
    EarlyExit,
}

/// One checked sample or triple.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Arguments in case order, e.g. (l, a, b) or a lemma's sample tuple.
    pub args: Vec<i64>,
    /// Measured quantity (a count, or an inequality's left side).
    pub observed: f64,
    /// The bound it was compared against.
    pub bound: f64,
    /// observed - bound for lower bounds; bound - observed for upper bounds.
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Pass/fail ledger for an exhaustive or sampled inequality check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    /// Human-readable definition of the range actually processed.
    pub grid: String,
    pub mode: ScanMode,
    /// True when every element of the stated range was processed.
    pub exhaustive: bool,
    /// Fraction processed when a budget stopped the run early.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_fraction: Option<f64>,
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    /// Every failing witness (checks are expected to have none).
    pub failures: Vec<Witness>,
    /// The passing witnesses with the least slack.
    pub minimal_slack: Vec<Witness>,
    /// Wall time is execution detail, not a result: kept out of JSON so
    /// identical configs produce byte-identical output.
    #[serde(skip)]
    pub wall_ms: u64,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Keep the k smallest-slack witnesses, deterministically.
pub(crate) struct MinSlack {
    k: usize,
    items: Vec<Witness>,
}

impl MinSlack {
    pub fn new(k: usize) -> Self {
        MinSlack { k, items: Vec::new() }
    }

    pub fn push(&mut self, w: Witness) {
        self.items.push(w);
        self.items
            .sort_by(|a, b| a.slack.partial_cmp(&b.slack).unwrap().then(a.args.cmp(&b.args)));
        self.items.truncate(self.k);
    }

    pub fn merge(&mut self, other: MinSlack) {
        for w in other.items {
            self.push(w);
        }
    }

    pub fn into_vec(self) -> Vec<Witness> {
        self.items
    }
}

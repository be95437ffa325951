use serde::Serialize;
use serde_json::json;

use super::{Mode, Status, Verdict};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub checked: usize,
    pub valid: usize,
    pub random_pass: usize,
    pub counterexample: usize,
}

/// Per-equation verdicts for one run. Contains no timing data, so equal
/// inputs give byte-identical renderings.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub mode: Mode,
    pub seed: u64,
    /// Number of equations submitted; more than `verdicts.len()` after a fail-fast stop.
    pub instances: usize,
    pub verdicts: Vec<Verdict>,
}

impl SuiteReport {
    pub fn totals(&self) -> Totals {
        let mut t = Totals {
            instances: self.instances,
            checked: self.verdicts.len(),
            ..Totals::default()
        };
        for v in &self.verdicts {
            match v.status {
                Status::Valid => t.valid += 1,
                Status::RandomPass { .. } => t.random_pass += 1,
                Status::Counterexample(_) => t.counterexample += 1,
            }
        }
        t
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| !v.is_failure())
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.is_failure())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.is_failure())
    }

    /// One line per verdict: `LABEL  STATUS  [assignment]`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.label);
            out.push_str("  ");
            out.push_str(&v.status.keyword());
            if let Status::Counterexample(c) = &v.status {
                out.push_str("  ");
                out.push_str(&c.render());
            }
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "algebra": self.algebra,
            "mode": self.mode,
            "seed": self.seed,
            "totals": self.totals(),
            "first_failure": self.first_failure().map(|v| v.label.clone()),
        })
    }
}

//! Verification outcomes: single-draw [`CheckReport`]s and the aggregated
//! campaign [`VerificationReport`] that the CLI persists as JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactnum::GaussianRational;

/// First index at which the two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub lhs: GaussianRational,
    pub rhs: GaussianRational,
}

/// Result of checking one identity at one parameter point for `0 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub n_max: usize,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn pass(identity: impl Into<String>, n_max: usize) -> Self {
        CheckReport { identity: identity.into(), n_max, counterexample: None, notes: Vec::new() }
    }

    pub fn fail(identity: impl Into<String>, n_max: usize, cx: Counterexample) -> Self {
        CheckReport { identity: identity.into(), n_max, counterexample: Some(cx), notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Evaluates `sides(n)` for `n = 0..=n_max` and stops at the first mismatch.
pub fn check_range(
    identity: &str,
    n_max: usize,
    mut sides: impl FnMut(usize) -> Result<(GaussianRational, GaussianRational)>,
) -> Result<CheckReport> {
    for n in 0..=n_max {
        let (lhs, rhs) = sides(n)?;
        if lhs != rhs {
            return Ok(CheckReport::fail(identity, n_max, Counterexample { n, lhs, rhs }));
        }
    }
    Ok(CheckReport::pass(identity, n_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    InvalidParameter,
}

/// Aggregated outcome of a seeded identity campaign.
///
/// Reproducible from `(identity, seed, trials, n_range)`; only `elapsed_ms`
/// varies between runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    /// The draw of the first failing trial, or of trial 0 when all pass.
    pub parameter_draw: BTreeMap<String, String>,
    pub n_range: [usize; 2],
    pub trials: usize,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_trial: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
    pub seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON with `elapsed_ms` zeroed, for reproducibility comparisons.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    /// File name used when persisting: `<identity>-seed<seed>.json`.
    pub fn file_name(&self) -> String {
        let safe: String = self
            .identity
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        format!("{safe}-seed{}.json", self.seed)
    }
}

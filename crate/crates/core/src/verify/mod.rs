//! Mechanical checks of the addition-deletion behaviour of mdr, of the
//! family constructions, and a deterministic batch runner.
//!
//! A checker never fails on an instance outside its hypotheses: such
//! instances are recorded with `hypotheses_hold = false`. A result with true
//! hypotheses and a false conclusion is a counterexample.

mod checks;
mod corpus;
mod suite;

use std::collections::BTreeMap;

use serde::Serialize;

pub use checks::Verifier;
pub use corpus::{corpus, family_corpus, predictor_corpus, undetermined_corpus, CorpusEntry};
pub use suite::{run_suite, run_suite_with, SuiteReport, SUITE_NAMES};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::syzygy::SyzygyEngine;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub arrangement_id: String,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    /// Reason the check was not evaluated (degenerate input).
    pub skipped: Option<String>,
    /// Computation error, reported as a failure.
    pub error: Option<String>,
    pub details: BTreeMap<String, i64>,
}

impl CheckResult {
    pub(crate) fn new(check_name: &str, arrangement_id: &str) -> Self {
        CheckResult {
            check_name: check_name.to_string(),
            arrangement_id: arrangement_id.to_string(),
            hypotheses_hold: false,
            conclusion_holds: true,
            skipped: None,
            error: None,
            details: BTreeMap::new(),
        }
    }

    pub(crate) fn skip(mut self, reason: &str) -> Self {
        self.skipped = Some(reason.to_string());
        self
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl TryInto<i64>) {
        self.details.insert(key.to_string(), value.try_into().unwrap_or(i64::MAX));
    }

    /// Records an implication `hypothesis ⇒ conclusion`.
    pub(crate) fn implication(&mut self, name: &str, hypothesis: bool, conclusion: bool) {
        self.detail(&format!("{name}_hypothesis"), i64::from(hypothesis));
        if hypothesis {
            self.hypotheses_hold = true;
            self.detail(&format!("{name}_conclusion"), i64::from(conclusion));
            self.conclusion_holds &= conclusion;
        }
    }

    pub(crate) fn from_error(check_name: &str, arrangement_id: &str, e: &crate::Error) -> Self {
        let mut r = CheckResult::new(check_name, arrangement_id);
        r.error = Some(e.to_string());
        r.conclusion_holds = false;
        r
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    /// True hypotheses with a false conclusion, or a computation error.
    pub fn is_failure(&self) -> bool {
        self.error.is_some() || (self.skipped.is_none() && self.hypotheses_hold && !self.conclusion_holds)
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_failure() {
            "FAIL"
        } else if self.is_skipped() {
            "SKIP"
        } else if !self.hypotheses_hold {
            "VACUOUS"
        } else {
            "PASS"
        }
    }
}

/// `r′ ≤ r ≤ r′ + 1`, and `r = r′` whenever `|A| - |A^H| > r` or `|A′| - |A^H| > r′`.
pub fn check_fundamental(a: &Arrangement, h_index: usize) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_fundamental(a, "input", h_index)
}

/// `|A^H| ≥ r′ + 2 ⇒ r = r′ + 1` and `|A^H| ≥ r + 2 ⇒ r′ = r - 1` for lines.
pub fn check_addition_deletion_l3(a: &Arrangement, h_index: usize) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_addition_deletion_l3(a, "input", h_index)
}

/// `r′ < r″ ⇒ r = r′ + 1` and `r = r′ ⇒ r″ ≤ r`, with `r″` the mdr of the restriction.
pub fn check_general_addition(a: &Arrangement, h_index: usize) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_general_addition(a, "input", h_index)
}

/// For free `A` with exponents `(1, d_2, d_3)`: `r(A′) = d_2 - 1` iff `|A^H| = 1 + d_3`, else `d_2`.
pub fn check_free_deletion(a: &Arrangement, h_index: usize) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_free_deletion(a, "input", h_index)
}

/// Adding a line meeting a maximal Tjurina arrangement of type `(d′, r′)` in
/// `r′ + 2` points gives type `(d′ + 1, r′ + 1)` with `τ` growing by `2d′ - r′ - 2`.
pub fn check_maximal_tjurina_addition(a_prime: &Arrangement, line: &Hyperplane) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_maximal_tjurina_addition(a_prime, "input", line)
}

/// Transition of mdr and `τ` when a certified generic line is added, either
/// through a point of maximal multiplicity or transversally.
pub fn check_generic_addition(a_prime: &Arrangement, seed: u64, through_max_point: bool) -> Result<CheckResult> {
    Verifier::new(&SyzygyEngine::new()).check_generic_addition(a_prime, "input", seed, through_max_point)
}

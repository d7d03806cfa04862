//! Batch runner over the corpora.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{family_corpus, predictor_corpus, undetermined_corpus, CorpusEntry};
use super::{corpus, CheckResult, Verifier};
use crate::arrangement::{same_lattice, weak_combinatorics_equal, Arrangement};
use crate::invariants::{
    classify_freeness_with, determined_by_weak_combinatorics, predict_r_from_combinatorics, tau_max, tjurina,
    tjurina_from_points, yoshinaga_check, Prediction,
};
use crate::syzygy::SyzygyEngine;
use crate::{Error, Result};

pub const SUITE_NAMES: &[&str] = &["families", "addition_deletion", "predictor", "freeness", "all"];

/// Largest degree used by the per-hyperplane batteries.
const MAX_BATTERY_DEGREE: usize = 14;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    #[serde(flatten)]
    pub result: CheckResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub skipped: usize,
    pub failed: usize,
    pub results: Vec<SuiteResult>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, mut results: Vec<SuiteResult>) -> Self {
        results.sort_by(|a, b| {
            let key = |r: &SuiteResult| {
                (
                    r.suite.clone(),
                    r.result.arrangement_id.clone(),
                    r.result.check_name.clone(),
                    r.result.details.get("h_index").copied(),
                )
            };
            key(a).cmp(&key(b))
        });
        let count = |v: &str| results.iter().filter(|r| r.result.verdict() == v).count();
        SuiteReport {
            suite: suite.to_string(),
            seed,
            total: results.len(),
            passed: count("PASS"),
            vacuous: count("VACUOUS"),
            skipped: count("SKIP"),
            failed: count("FAIL"),
            results,
        }
    }

    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteResult> {
        self.results.iter().filter(|r| r.result.is_failure())
    }

    /// Verdict per result, for comparing runs with different seeds.
    pub fn verdicts(&self) -> Vec<(String, String, String, Option<i64>, &'static str)> {
        self.results
            .iter()
            .map(|r| {
                (
                    r.suite.clone(),
                    r.result.arrangement_id.clone(),
                    r.result.check_name.clone(),
                    r.result.details.get("h_index").copied(),
                    r.result.verdict(),
                )
            })
            .collect()
    }

    /// Plain-text summary table followed by the failures.
    pub fn to_text(&self) -> String {
        let mut rows: BTreeMap<(String, String), [usize; 4]> = BTreeMap::new();
        for r in &self.results {
            let slot = rows.entry((r.suite.clone(), r.result.check_name.clone())).or_default();
            let i = match r.result.verdict() {
                "PASS" => 0,
                "VACUOUS" => 1,
                "SKIP" => 2,
                _ => 3,
            };
            slot[i] += 1;
        }
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        let _ = writeln!(out, "{:<20} {:<30} {:>6} {:>8} {:>6} {:>6}", "suite", "check", "pass", "vacuous", "skip", "fail");
        for ((suite, check), [p, v, s, f]) in &rows {
            let _ = writeln!(out, "{suite:<20} {check:<30} {p:>6} {v:>8} {s:>6} {f:>6}");
        }
        let _ = writeln!(
            out,
            "total {}: {} passed, {} vacuous, {} skipped, {} failed",
            self.total, self.passed, self.vacuous, self.skipped, self.failed
        );
        for f in self.failures() {
            let _ = writeln!(
                out,
                "FAIL {} {} {}{} {:?}",
                f.suite,
                f.result.arrangement_id,
                f.result.check_name,
                f.result.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default(),
                f.result.details
            );
        }
        out
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    run_suite_with(&SyzygyEngine::new(), name, seed)
}

pub fn run_suite_with(engine: &SyzygyEngine, name: &str, seed: u64) -> Result<SuiteReport> {
    let v = Verifier::new(engine);
    let results = match name {
        "families" => families(v, seed)?,
        "addition_deletion" => addition_deletion(v, seed)?,
        "predictor" => predictor(v, seed)?,
        "freeness" => freeness(v, seed)?,
        "all" => {
            let mut all = families(v, seed)?;
            all.extend(addition_deletion(v, seed)?);
            all.extend(predictor(v, seed)?);
            all.extend(freeness(v, seed)?);
            all
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport::new(name, seed, results))
}

fn tag(suite: &str, results: Vec<CheckResult>) -> Vec<SuiteResult> {
    results.into_iter().map(|result| SuiteResult { suite: suite.to_string(), result }).collect()
}

/// Runs `f`, turning an error into a failing result.
fn guarded(name: &str, id: &str, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    f().unwrap_or_else(|e| CheckResult::from_error(name, id, &e))
}

fn guarded_many(name: &str, id: &str, f: impl FnOnce() -> Result<Vec<CheckResult>>) -> Vec<CheckResult> {
    f().unwrap_or_else(|e| vec![CheckResult::from_error(name, id, &e)])
}

/// Expected `(mdr, τ)` of a family member, if it has a documented type.
fn expected_type(id: &str, a: &Arrangement) -> Option<(usize, usize)> {
    let d = a.degree();
    let param = |key: &str| -> Option<usize> {
        id.split([':', ',']).find_map(|t| t.strip_prefix(&format!("{key}="))).and_then(|v| v.parse().ok())
    };
    let r = if id.starts_with("dminus4") {
        d - 4
    } else if id.starts_with("dminus3") {
        d - 3
    } else if id.starts_with("thm100") || id.starts_with("prop101") {
        let (k, j) = (param("k")?, param("j")?);
        if d != 2 * k - 1 + j {
            return Some((usize::MAX, usize::MAX));
        }
        k - 1 + j
    } else {
        return None;
    };
    Some((r, tau_max(d, r).ok()?))
}

fn family_regression(v: Verifier, e: &CorpusEntry) -> Result<CheckResult> {
    let a = &e.arrangement;
    let mut res = CheckResult::new("family_regression", &e.id);
    let r = v.engine().mdr(a)?.0;
    let inc = a.incidence()?;
    let tau = tjurina(&inc.n);
    res.detail("d", a.degree());
    res.detail("r", r);
    res.detail("tau", tau);
    if e.id.starts_with("ziegler") {
        let expected_r = if e.id == "ziegler:1" { 5 } else { 6 };
        res.implication("ziegler", true, r == expected_r && inc.n_j(2) == 18 && inc.n_j(3) == 6 && tau == 42);
        let tm = tau_max(9, r)?;
        res.detail("tau_max", tm);
        res.implication("maximal_tjurina", true, (tau == tm) == (e.id == "ziegler:2"));
    } else if let Some((er, et)) = expected_type(&e.id, a) {
        res.detail("expected_r", er);
        res.detail("expected_tau", et);
        res.implication("type", true, r == er && tau == et);
    }
    Ok(res)
}

/// Maximal Tjurina addition along a chain `A_(j-1) ⊂ A_j`.
fn chain_step(v: Verifier, prev: &CorpusEntry, next: &CorpusEntry) -> Result<CheckResult> {
    let added: Vec<_> = next
        .arrangement
        .hyperplanes()
        .iter()
        .filter(|h| prev.arrangement.position(h).is_none())
        .collect();
    if added.len() != 1 || next.arrangement.degree() != prev.arrangement.degree() + 1 {
        return Err(Error::Consistency(format!("{} does not extend {} by one line", next.id, prev.id)));
    }
    let mut res = v.check_maximal_tjurina_addition(&prev.arrangement, &next.id, added[0])?;
    // Every chain step must meet the hypotheses.
    res.implication("chain_premise", true, res.hypotheses_hold && res.details.get("premise") == Some(&1));
    Ok(res)
}

fn chain_base(id: &str) -> Option<(&str, usize)> {
    let (base, j) = id.rsplit_once(",j=")?;
    Some((base, j.parse().ok()?))
}

fn families(v: Verifier, seed: u64) -> Result<Vec<SuiteResult>> {
    let corpus = family_corpus()?;
    let mut results: Vec<CheckResult> =
        corpus.par_iter().map(|e| guarded("family_regression", &e.id, || family_regression(v, e))).collect();
    let steps: Vec<(&CorpusEntry, &CorpusEntry)> = corpus
        .iter()
        .filter_map(|next| {
            let (base, j) = chain_base(&next.id)?;
            let prev_id = format!("{base},j={}", j.checked_sub(1)?);
            Some((corpus.iter().find(|e| e.id == prev_id)?, next))
        })
        .collect();
    results.extend(
        steps
            .par_iter()
            .map(|(p, n)| guarded("maximal_tjurina_addition", &n.id, || chain_step(v, p, n)))
            .collect::<Vec<_>>(),
    );
    let z1 = &corpus[0].arrangement;
    let z2 = &corpus[1].arrangement;
    results.push(guarded("ziegler_same_lattice", "ziegler", || {
        let mut r = CheckResult::new("ziegler_same_lattice", "ziegler");
        r.implication("same_lattice", true, same_lattice(z1, z2)?);
        Ok(r)
    }));
    let line_seed = seed.wrapping_mul(1000).wrapping_add(900);
    for (id, a) in [("ziegler:1", z1), ("ziegler:2", z2)] {
        for through in [true, false] {
            results.push(guarded("generic_addition", id, || v.check_generic_addition(a, id, line_seed, through)));
        }
    }
    results.push(guarded("generic_pair_weak_combinatorics", "ziegler", || {
        let mut r = CheckResult::new("generic_pair_weak_combinatorics", "ziegler");
        let b1 = crate::arrangement::add_generic_line(z1, line_seed, None)?;
        let b2 = crate::arrangement::add_generic_line(z2, line_seed, None)?;
        r.implication("weak_combinatorics", true, weak_combinatorics_equal(&b1, &b2)?);
        Ok(r)
    }));
    Ok(tag("families", results))
}

fn battery_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    Ok(corpus(seed)?.into_iter().filter(|e| e.arrangement.degree() <= MAX_BATTERY_DEGREE).collect())
}

fn addition_deletion(v: Verifier, seed: u64) -> Result<Vec<SuiteResult>> {
    let jobs: Vec<(CorpusEntry, usize)> = battery_corpus(seed)?
        .into_iter()
        .flat_map(|e| (0..e.arrangement.degree()).map(move |h| (e.clone(), h)))
        .collect();
    let results: Vec<CheckResult> = jobs
        .par_iter()
        .flat_map_iter(|(e, h)| {
            let a = &e.arrangement;
            [
                guarded("fundamental", &e.id, || v.check_fundamental(a, &e.id, *h)),
                guarded("addition_deletion_l3", &e.id, || v.check_addition_deletion_l3(a, &e.id, *h)),
                guarded("general_addition", &e.id, || v.check_general_addition(a, &e.id, *h)),
                guarded("free_deletion", &e.id, || v.check_free_deletion(a, &e.id, *h)),
            ]
        })
        .collect();
    Ok(tag("addition_deletion", results))
}

fn predictor(v: Verifier, seed: u64) -> Result<Vec<SuiteResult>> {
    let defined = predictor_corpus(seed)?;
    let abstain = undetermined_corpus(seed)?;
    let mut results: Vec<CheckResult> = defined
        .par_iter()
        .map(|e| {
            guarded("predictor", &e.id, || {
                let mut r = CheckResult::new("predictor", &e.id);
                let mdr = v.engine().mdr(&e.arrangement)?.0;
                r.detail("r", mdr);
                let p = predict_r_from_combinatorics(&e.arrangement)?;
                let value = p.value();
                r.detail("predicted", value.map_or(-1, |x| x as i64));
                r.implication("defined_and_equal", true, value == Some(mdr));
                Ok(r)
            })
        })
        .collect();
    results.extend(
        abstain
            .par_iter()
            .map(|e| {
                guarded("predictor_undetermined", &e.id, || {
                    let mut r = CheckResult::new("predictor_undetermined", &e.id);
                    let p = predict_r_from_combinatorics(&e.arrangement)?;
                    r.implication("undetermined", true, matches!(p, Prediction::Undetermined { .. }));
                    Ok(r)
                })
            })
            .collect::<Vec<_>>(),
    );
    let all = battery_corpus(seed)?;
    results.extend(
        all.par_iter()
            .map(|e| {
                guarded("weak_combinatorics_determination", &e.id, || {
                    let mut r = CheckResult::new("weak_combinatorics_determination", &e.id);
                    let det = determined_by_weak_combinatorics(&e.arrangement)?;
                    if let Some(x) = det {
                        let mdr = v.engine().mdr(&e.arrangement)?.0;
                        r.detail("r", mdr);
                        r.detail("determined", x);
                        r.implication("determined", true, x == mdr);
                    } else {
                        r.implication("determined", false, true);
                    }
                    Ok(r)
                })
            })
            .collect::<Vec<_>>(),
    );
    Ok(tag("predictor", results))
}

fn freeness_checks(v: Verifier, e: &CorpusEntry) -> Result<Vec<CheckResult>> {
    let a = &e.arrangement;
    let mut out = Vec::new();
    let inc = a.incidence()?;
    let mdr = v.engine().mdr(a)?.0;
    let tau = tjurina(&inc.n);
    let mut t = CheckResult::new("tau", &e.id);
    t.detail("tau", tau);
    t.implication("two_routes", true, tau == tjurina_from_points(&inc));
    t.implication("du_plessis_wall", true, tau <= tau_max(a.degree(), mdr)?);
    out.push(t);
    let class = classify_freeness_with(v.engine(), a)?;
    let free = class.free_exponents();
    for h in 0..a.degree() {
        let y = yoshinaga_check(a, h)?;
        let mut r = CheckResult::new("yoshinaga", &e.id);
        r.detail("h_index", h);
        r.detail("e1", y.exponents.e1);
        r.detail("e2", y.exponents.e2);
        r.detail("b2_zero", y.b2_zero);
        match free {
            Some([_, d2, d3]) => r.implication(
                "free",
                true,
                (y.exponents.e1, y.exponents.e2) == (d2, d3) && y.b2_zero == (d2 * d3) as i64,
            ),
            None => r.implication("not_free", true, !y.equality),
        }
        out.push(r);
    }
    Ok(out)
}

fn freeness(v: Verifier, seed: u64) -> Result<Vec<SuiteResult>> {
    let results: Vec<CheckResult> = battery_corpus(seed)?
        .par_iter()
        .flat_map_iter(|e| guarded_many("freeness", &e.id, || freeness_checks(v, e)))
        .collect();
    Ok(tag("freeness", results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 0).is_err());
    }

    #[test]
    fn predictor_suite_passes() {
        let rep = run_suite("predictor", 0).unwrap();
        assert!(rep.success(), "{}", rep.to_text());
    }

    #[test]
    fn chain_base_parsing() {
        assert_eq!(chain_base("thm100:k=4,j=2"), Some(("thm100:k=4", 2)));
        assert_eq!(chain_base("ziegler:1"), None);
    }
}
